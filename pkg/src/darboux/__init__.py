"""Complex potentials with real spectra from first-order Darboux transformations."""

__version__ = "0.1.0"
