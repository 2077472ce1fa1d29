"""Computational laboratory for the iterated monodromy group of z^2+i.

Thin re-export of the compiled core: exact word arithmetic and the word
problem, the generating automaton, L-presentation relators, Schreier graphs,
Markov operator spectra with the Schur-complement renormalization, and the
self-affine measure machinery with its Monte-Carlo oracle.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
