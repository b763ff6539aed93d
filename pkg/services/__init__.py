"""Measurement ingestion, experiment reports and logging setup."""
