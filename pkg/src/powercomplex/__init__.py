"""Power complexes n^K over finite incidence complexes: construction, axiom
checks, automorphism groups, skeletons, quotients and induced coverings."""
from .catalog import CatalogKey, generate, parse_key
from .complex import (IncidenceComplex, ValidationReport, Violation, flag_graph, flags,
                      from_json, is_vertex_describable, section, to_json, validate_complex)
from .covering import (ComplexMap, MapClass, Quotient, classify, induced_covering_f,
                       induced_covering_g, is_equifibered, is_vertex_bijection,
                       map_from_vertices, quotient, vertex_restriction)
from .errors import (GroupPropertyError, MalformedComplexError, NotACoveringError, NotRegularError,
                     NotVertexDescribableError, PowerComplexError, SizeCapExceeded)
from .isomorphism import is_isomorphic
from .perm import PermGroup
from .power import (PowerComplex, PowerFace, brute_force_power_oracle, power_complex,
                    power_face_count, skeleton, vertex_figure)
from .surface import euler_characteristic, map_genus
from .symmetry import (DistinguishedSystem, automorphism_group, check_group_properties,
                       distinguished_system, flag_orbit_count, is_automorphism, is_regular,
                       reconstruct_from_group, wreath_order, wreath_subgroup)

__all__ = [name for name in dir() if not name.startswith("_")]
