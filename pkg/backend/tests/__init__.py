"""Tests for the solenoid scattering cross-section library."""
