"""Parameter sweeps and their file output."""
