from .render import PlotSpec, load_rows, render, render_all

__version__ = "0.1.0"
