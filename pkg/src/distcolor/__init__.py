"""2-distance coloring of sparse graphs: analytics, reducible configurations,
discharging audits and constructive (D+2)-colorings."""

from .coloring import (BudgetExceeded, Coloring, ListInstance, color_even_cycle_lists,
                       exact_chi2, greedy_color, verify_coloring)
from .density import mad_below, mad_bruteforce, mad_exact, max_density
from .discharging import AuditReport, ChargeState, Transfer, apply_rules, audit, initial_charge
from .generators import GeneratorSpec, generate
from .graph import (DistanceProfile, EdgeListError, Graph, average_degree, girth,
                    parse_edge_list, square_graph, two_distance_profile)
from .reduction import (ExtensionError, IrreducibleError, constructive_color, extend,
                        reduce_once)
from .regimes import Regime
from .structure import (Configuration, KPath, Kind, SponsorAssignment, SponsorshipError,
                        VertexSignature, build_sponsorship, classify_paths,
                        find_configurations, vertex_signature)

__all__ = [
    "AuditReport", "BudgetExceeded", "ChargeState", "Coloring", "Configuration",
    "DistanceProfile", "EdgeListError", "ExtensionError", "GeneratorSpec", "Graph",
    "IrreducibleError", "KPath", "Kind", "ListInstance", "Regime", "SponsorAssignment",
    "SponsorshipError", "Transfer", "VertexSignature", "apply_rules", "audit",
    "average_degree", "build_sponsorship", "classify_paths", "color_even_cycle_lists",
    "constructive_color", "exact_chi2", "extend", "find_configurations", "generate",
    "girth", "greedy_color", "initial_charge", "mad_below", "mad_bruteforce", "mad_exact",
    "max_density", "parse_edge_list", "reduce_once", "square_graph", "two_distance_profile",
    "verify_coloring", "vertex_signature",
]
