"""Published benchmark values for the hydrogen-like ion z=118 (Og, A=294).

All energies are shifted by ``-m c**2`` and given in hartree.  The finite
element columns were computed with 600 nodes and a node intensity parameter
of ``1e-4``.
"""
import numpy as np

Z_OG = 118
A_OG = 294

#: Exact energies for kappa=-2, n_r = 1..15.
EXACT_KAPPA_M2 = np.array([
    -1829.630750908, -826.7683539069, -463.1183252634, -294.4509801141,
    -203.2419549027, -148.5534402360, -113.2479180697, -89.15794547564,
    -71.99846504808, -59.34862423729, -49.75800915710, -42.31511730902,
    -36.42398370073, -31.68173025393, -27.80813459180,
])

#: Exact energies for kappa=+2, n_r = 2..15.
EXACT_KAPPA_P2 = np.array([
    -826.7683539068, -463.1183252633, -294.4509801141, -203.2419549026,
    -148.5534402360, -113.2479180697, -89.15794547563, -71.99846504808,
    -59.34862423728, -49.75800915710, -42.31511730902, -36.42398370072,
    -31.68173025392, -27.80813459179,
])

#: Spurious values produced by the standard Galerkin method, kappa=-2.
GALERKIN_SPURIOUS_KAPPA_M2 = np.array([
    -294.6216782193, -113.4611501523, -59.57649074983, -36.65876644972,
])

#: Standard Galerkin value coinciding with the kappa=-2 ground state, seen for kappa=+2.
GALERKIN_COINCIDENCE_KAPPA_P2 = -1829.630750908

#: Stabilized linear FEM, kappa=-2, n=600.
SUPG_KAPPA_M2 = np.array([
    -1829.630678009, -826.7681327991, -463.1178925700, -294.4502765309,
    -203.2409198509, -148.5520121218, -113.2460345755, -89.15554369439,
    -71.99548153219, -59.34499500331, -49.75366967052, -42.31000245862,
    -36.41802776855, -31.67486688495, -27.80029676250,
])

#: Relative errors of :data:`SUPG_KAPPA_M2` against the exact energies.
SUPG_REL_ERR_KAPPA_M2 = np.array([
    0.0000000398, 0.0000002674, 0.0000009343, 0.0000023894, 0.0000050927,
    0.0000096134, 0.0000166316, 0.0000269384, 0.0000414386, 0.0000611511,
    0.0000872118, 0.0001208752, 0.0001635167, 0.0002166349, 0.0002818538,
])

#: Stabilized FEM, kappa=-2, levels 1..5 at increasing node counts.
CONVERGENCE_NODES = (200, 400, 600, 800, 1000)
SUPG_CONVERGENCE_KAPPA_M2 = np.array([
    [-1829.624974, -1829.630384, -1829.630678, -1829.630727, -1829.630741],
    [-826.7507746, -826.7672405, -826.7681327, -826.7682837, -826.7683250],
    [-463.0838205, -463.1161451, -463.1178925, -463.1181879, -463.1182689],
    [-294.3946426, -294.4474328, -294.4502765, -294.4507569, -294.4508885],
    [-203.1586471, -203.2367320, -203.2409198, -203.2416267, -203.2418202],
])

#: Extended nucleus, stabilized FEM: (kappa, table slot of first state, first value).
EXTENDED_FIRST_STATES = (
    (-2, 1, -1829.6307), (2, 2, -826.76830), (-3, 3, -790.18014), (3, 4, -447.43131),
    (-4, 5, -440.28637), (4, 6, -282.71318), (-5, 7, -280.57597), (5, 8, -195.20940),
)
