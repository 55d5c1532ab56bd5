"""Fixed files that are common for the Rusm sessions and the command-line interface."""
