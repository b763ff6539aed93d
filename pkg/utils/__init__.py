"""Command-line parsing and output helpers."""
