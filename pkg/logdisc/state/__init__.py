"""Per-run session state."""
