"""Exact Hom complexes, their homology and Stiefel-Whitney heights, and the
chromatic lower bounds they imply."""

__version__ = "0.1.0"

from .chains import (ChainComplex, ChainMap, HomologyResult, homological_connectivity, homology,
                     induced_map_homology, relative_homology, simplicial_chain)
from .equivariant import (equivariant_model, quotient_homology, quotient_induced_map, sw1_cocycle,
                          sw_class, sw_height, cup_power)
from .errors import (DisconnectedError, FormatError, HomcxError, NotChainMapError, NotFreeError,
                     ResourceLimitError, SoundnessError)
from .graphs import (Graph, complement, complete, cycle, enumerate_homomorphisms, find_folds, fold_reduce,
                     induced, kneser, make_named, parse_family, path, read_graph, star, tensor_product,
                     write_graph)
from .hom import (HomComplex, cellular_chain, Involution, build_hom, build_hom_plus, complete_involution, cycle_involution,
                  independence_complex, induced_map, neighborhood_complex, verify_hom_plus_iso)
from .obstruction import bound_report, chi_lower_connectivity, chi_lower_sw
from .simplicial import SimplicialComplex, join_power
