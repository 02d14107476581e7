"""Test package for the negotiator project."""
