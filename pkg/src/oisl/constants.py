"""Physical constants shared across the package (SI units)."""

from scipy import constants as _sc

SPEED_OF_LIGHT = _sc.c  # m/s
PLANCK = 6.62607004e-34  # J s
ELEMENTARY_CHARGE = _sc.e  # C

GRAVITATIONAL_CONSTANT = 6.6743e-11  # m^3 kg^-1 s^-2
EARTH_MASS = 5.972e24  # kg
EARTH_RADIUS = 6371e3  # m
GM_EARTH = GRAVITATIONAL_CONSTANT * EARTH_MASS

DEFAULT_WAVELENGTH = 1550e-9  # m
