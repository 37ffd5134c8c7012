"""Spherical codes, kissing-number bounds and polyhedra circumscribed about a sphere.

Modules
-------
geom           points, spherical polygons, Voronoi/Delaunay tessellations
quadrature     adaptive Simpson, Chebyshev interpolation, triangle rules
bounds         packing/covering/code bounds, simplex-density bound, kissing tables
optimize       seeded Tammes, antipodal, hemisphere and contact-count searches
contacts       contact graphs and their faces
isoperimetric  circumscribed polyhedra, IQ, central projection, lifted areas
io             file formats and run manifests
cli            command-line interface (``python -m spherekit``)
"""

__version__ = "0.1.0"

from .geom import SphericalCode, min_pairwise  # noqa: E402
from .bounds import BoundReport, coxeter_bound, ft_code_bound, goldberg_ft_rhs  # noqa: E402

__all__ = ["__version__", "SphericalCode", "min_pairwise", "BoundReport", "coxeter_bound",
           "ft_code_bound", "goldberg_ft_rhs"]
