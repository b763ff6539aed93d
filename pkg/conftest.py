"""Repository root marker: lets pytest import config, core, services, handlers and utils."""
