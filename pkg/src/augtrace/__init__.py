"""Augmented trace codes with locality 2 over finite field towers."""
__version__ = "0.1.0"
