"""Tests for the coupled Gaussian synthesizer."""
