"""CSV / JSON output."""
