from . import (correlations, kernels, oracle, polarizability, potentials,
               quadrature, scenario, scene, terms, validation)
