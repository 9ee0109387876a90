import numpy as np

ID2 = np.eye(2, dtype=np.complex128)

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

# PAULI_PAIRS[i, j] = s_i (x) s_j
PAULI_PAIRS = np.einsum("iab,jcd->ijacbd", PAULI, PAULI).reshape(3, 3, 4, 4).copy()

# columns: phi+, phi-, psi+, psi- in the |00>,|01>,|10>,|11> basis
_r = 1.0 / np.sqrt(2.0)
BELL_BASIS = np.array(
    [
        [_r, _r, 0.0, 0.0],
        [0.0, 0.0, _r, _r],
        [0.0, 0.0, _r, -_r],
        [_r, -_r, 0.0, 0.0],
    ]
)

# eigenvalues of (XX, YY, ZZ) on each Bell column
BELL_SIGNS = np.array(
    [
        [1.0, -1.0, 1.0],
        [-1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0],
        [-1.0, -1.0, -1.0],
    ]
)

# magic basis: local unitaries become real orthogonal matrices here
MAGIC_BASIS = np.array(
    [
        [_r, 1j * _r, 0, 0],
        [0, 0, 1j * _r, _r],
        [0, 0, 1j * _r, -_r],
        [_r, -1j * _r, 0, 0],
    ],
    dtype=np.complex128,
)

JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 60
