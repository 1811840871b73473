"""Tests for the pidensity package."""
