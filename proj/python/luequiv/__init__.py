from ._luequiv import (  # noqa: F401
    BipartiteOperator,
    LocalUnitary,
    classify,
    decide_lu,
    decide_slu,
    eigenvalues,
    fixture,
    fixture_names,
    max_product_overlap,
    partial_transpose,
    pt_eigenvalues,
    verify_witness,
)
