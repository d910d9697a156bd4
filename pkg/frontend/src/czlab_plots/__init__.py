"""Plotting front end for czlab experiment reports (pure CSV consumer)."""

from .reader import (CsvFormatError, EmptyDataError, MissingColumnError,
                     Report, read_report)
from .render import KINDS, PlotJob, render

__version__ = "0.1.0"
