"""Command-line driver and model-description language."""
