"""Test fixtures: sample documents and brute-force oracles."""
