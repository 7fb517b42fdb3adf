"""Finite-dimensional quantum information toolkit.

Submodules:

* ``matkit``   dense complex linear-algebra kernel
* ``states``   states, Schmidt analysis, Werner family, Weyl/EPR bases
* ``channels`` Kraus/Choi calculus and channel-distance estimation
* ``qec``      correctability checks and recovery synthesis
* ``entwit``   entanglement witnesses and minimal-rank subspaces
* ``entropy``  entropies, strong subadditivity, Petz recovery, Markov states
* ``zeroerr``  operator systems, confusability graphs, theta SDPs
* ``sdpcore``  dense interior-point semidefinite solver
* ``randkit``  random sampling and matrix concentration experiments
* ``cli``      batch command-line front end
"""

from . import (  # noqa: F401
    channels,
    cli,
    entropy,
    entwit,
    errors,
    matkit,
    qec,
    randkit,
    sdpcore,
    serialize,
    states,
    zeroerr,
)

__version__ = "0.1.0"
