"""Test suite for the zeta_spectra package."""
