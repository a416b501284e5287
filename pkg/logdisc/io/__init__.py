"""Document loading and report writing."""
