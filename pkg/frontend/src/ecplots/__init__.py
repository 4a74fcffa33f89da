"""Rendering of ecmoments CSV/JSON reports into static figures.

This package never computes statistics: every plotted number is read from
the input files, and the values consumed for each figure are checksum-logged
so provenance is auditable.
"""

__version__ = "0.1.0"
