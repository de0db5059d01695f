"""Completion algorithms for the classes of metrically homogeneous graphs.

The public names below cover parameter admissibility, edge-labelled graphs,
the completion engines, the brute-force oracle and obstacle catalogues.
"""

from .completion import (CompletionResult, ForkRule, Outcome, TraceStep, antipodal_complete,
                         antipodal_complete_podefree, bipartite_complete, dispatch_complete,
                         fork_rules, fork_value, magic_complete, shortest_path_complete,
                         time_function)
from .errors import (EmptyBaseUnsupported, IncompleteGraph, MalformedParameters, MHError,
                     NoCompletion, NotAdmissible, NotSymmetric, OutOfRange, TooLarge)
from .graph import (EdgeLabelledGraph, PodedGraph, Reason, Status, Violation,
                    antipodal_companion, antipodal_extension, antipodal_symmetrize,
                    forbidden_triangles, membership_check, path_distance, triangle_verdict)
from .obstacles import (Decider, LabelledCycle, ObstacleCatalogue, backward_expand,
                        enumerate_obstacles, verify_obstacle_closure)
from .oracle import (AmalgamTriple, Report, antipodal_suite, automorphisms, canonical_amalgam,
                     engine_oracle_suite, enumerate_completions, exhaustive_suite,
                     has_completion, henson_suite, sir_property_suite,
                     verify_automorphism_preservation, verify_optimality, verify_parity)
from .params import (INF, AdmissibilityVerdict, Case, HensonConstraint, Kind, ParameterSet,
                     admissibility_verdict, completion_parameter, enumerate_admissible,
                     henson_completion_parameter, is_acceptable, magic_bounds,
                     valid_completion_parameters)

__version__ = "0.1.0"
