"""Finite-field groups used to check the classification by enumeration."""
