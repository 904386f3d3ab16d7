"""Figures from langcomp data files.

Consumes only the documented CSV/JSON formats (trajectories
``t,m1,m2,b``, direction fields ``m1,m2,dm1,dm2``, basins
``m1,m2,label``, loci ``s_b,m1,m2,b``, and equilibria JSON); it never
imports the model code, so any producer of the same files works.
Every render records the SHA-256 of each data file it consumed in a
``render_manifest.json`` next to the images.
"""

from .figures import FigureSpec, RenderError, render_figure, render_bundle

__version__ = "0.1.0"
