"""CNF generators, witness maps, DIMACS I/O and a brute-force oracle."""

from .clique import (
    WitnessMap,
    bclique_value,
    check_witness_property,
    embedding_witness,
    gen_bclique,
    gen_clique_plain,
    restrict_template,
    witness_assignment,
)
from .cnf import CnfFormula, SatResult, brute_force_sat, from_dimacs, to_dimacs
from .families import (
    Gadget,
    complete_bipartite,
    evaluate_lifted,
    gen_php,
    gen_tseitin,
    lift_formula,
    random_kcnf,
)

__all__ = [
    "CnfFormula",
    "Gadget",
    "SatResult",
    "WitnessMap",
    "bclique_value",
    "brute_force_sat",
    "check_witness_property",
    "complete_bipartite",
    "embedding_witness",
    "evaluate_lifted",
    "from_dimacs",
    "gen_bclique",
    "gen_clique_plain",
    "gen_php",
    "gen_tseitin",
    "lift_formula",
    "random_kcnf",
    "restrict_template",
    "to_dimacs",
    "witness_assignment",
]
