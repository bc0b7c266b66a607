"""Finite relation algebras from atom structures: families, splittings,
thinned completions and their finite fragments, representations, and
cylindric bases."""

from .core import (
    AtomStructure,
    AxiomReport,
    Element,
    FiniteAlgebra,
    StructureError,
    build_algebra,
    check_axioms,
    close_cycle,
    find_embedding,
    generate_subalgebra,
)
from .families import (
    MonkAlgebra,
    PartitionSubalg,
    SplitSpec,
    build_e23,
    build_monk,
    check_special_extension,
    e23_subalgebra,
    find_flexible,
    lift_blocks,
    split_algebra,
)
from .thinned import (
    FiniteFragment,
    FragmentClosureError,
    TailedElement,
    ThinnedSpec,
    almost_same,
    atom_product,
    build_fragment,
    is_cycle,
    tailed_product,
    thinning_T,
    verify_base_embedding,
)
from .represent import (
    BasicMatrix,
    EdgeLabeling,
    TrioFiller,
    build_representation,
    cyclic_group_labeling,
    enumerate_basic_matrices,
    mono_free_search,
    trio_extend,
    verify_representation,
)
from .cylindric import (
    CylAlgebra,
    MatrixStructure,
    build_ca,
    check_cylindric_basis,
    check_relational_basis,
    pair_product_condition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
