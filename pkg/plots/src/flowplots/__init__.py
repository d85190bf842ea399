"""Figures from 1D blood-flow solver CSVs: profiles, hysteresis, series."""

from .figures import (loop_area, plot_hysteresis, plot_profiles,
                      plot_spacetime, plot_timeseries, read_csv, render)
from .specfile import PlotSpec, SpecError, read_spec

__version__ = "0.1.0"
