"""
Test package for the floercalc backend.
"""
