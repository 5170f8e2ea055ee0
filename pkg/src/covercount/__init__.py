"""Exact enumeration of ramified coverings of the sphere.

Counts ``b_{g,nu,m}`` of genus-``g`` coverings with ramification type ``nu``
over one point and ``m`` further branch points, as polynomials in ``m``.
"""

from .exactalg import HPoly, RatPolyM, exact_divide, falling_factorial
from .genseries import GenFunction, b_number, bms_number, build_S, genus_slice
from .oracle import CountTable, enumerate_counts
from .partitions import Partition, diagram_stats, partitions_of
from .symfunc import PSeries, character_table, log_series, schur

__version__ = "0.1.0"
