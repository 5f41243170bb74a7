from .operators import (
    Operator,
    IDENTITY_2,
    IDENTITY_4,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    InvalidOperator,
    NotHermitian,
    NotUnitary,
    as_operator,
    dagger,
    kron,
    electron_operator,
    nuclear_operator,
    check_hermitian,
    check_unitary,
    eig_hermitian,
    expm,
    distance_to_identity,
)
