"""Positive and negative square energies of graphs.

Numeric spectra come from LAPACK, sign decisions can be made exact through
integer characteristic polynomials, and the closed-form families (Kneser,
generalised quadrangles, Taylor graphs, blowups) are evaluated with rational
arithmetic.
"""
from ._accel import HAVE_NUMBA, USE_NUMBA
from .graph import (Graph, blowup, complement, disjoint_copies, disjoint_union, is_connected,
                    make_complete, make_complete_bipartite, make_cycle, make_empty, make_kneser,
                    make_path, make_star)
from .graph6 import Graph6Error, encode_graph6, iter_graph6, parse_graph6, read_graph6_file
from .canon import canonical_form, enumerate_nonisomorphic
from .random_graphs import derive_seed, generate_maximal_planar, sample_gnp
from .spectral import (Inertia, SquareEnergies, eigenvalues_symmetric, exact_inertia, inertia,
                       spectral_resolution, square_energies)
from .exact import RationalSpectrum, exact_square_energies, gq_spectrum, kneser_spectrum, taylor_spectrum
from .coloring import chromatic_number
from .checks import Verdict, run_suite

__version__ = "0.1.0"
