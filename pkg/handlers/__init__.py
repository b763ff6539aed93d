"""Command handlers for the eigentrilat command line."""
