"""Solenoid scattering cross sections: Born-approximation Dirac scattering off a solenoidal field."""

__version__ = "0.1.0"
