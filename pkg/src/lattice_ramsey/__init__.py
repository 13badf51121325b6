"""Finite graded lattices, lattice homotheties, and exhaustive Ramsey-type searches over them."""
from .embeddings import boolean_combine, chain_combine, division_combine, partition_combine
from .errors import LatticeRamseyError, SearchBudgetExceeded
from .homothety import (
    HomothetyMap,
    compose,
    enumerate_lattice_homotheties,
    identity,
    pair_product,
    verify_homothety,
    verify_lattice_homothety,
)
from .lattices import (
    BooleanLattice,
    ChainLattice,
    DivisionLattice,
    LatticeModel,
    PartitionLattice,
    build_lattice,
    from_descriptor,
    product_lattice,
    sequence_member,
)
from .ramsey import (
    AdmissibleTriple,
    Coloring,
    MonoWitness,
    check_anchored,
    check_L_predicate,
    find_mono_homothety,
    ramsey_number,
)
from .systems import (
    HJForm,
    System,
    check_boolean_rigidity,
    check_compatibility,
    check_system_axioms,
    compose_hj,
    hj_to_map,
    is_member,
    recognize_hj,
)

__version__ = "0.1.0"
