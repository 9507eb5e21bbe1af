"""Exact symbolic engine for operator-valued free probability on finite
directed graphs: path semigroupoids, creation/annihilation word calculus,
diagonal expectations, noncrossing-partition cumulants, compressions, and
a sparse matrix cross-check model.
"""

from .graph import (DanglingEndpointError, Diagram, DirectedGraph,
                    DuplicateIdError, Edge, EmptyGraphError, GraphError,
                    InadmissibleError, Path, UnknownEdgeError,
                    UnknownVertexError, concat, diagram, diagram_distinct,
                    enumerate_semigroupoid, graph_to_document, load_graph,
                    loops_at, paths_from_to, try_concat)
from .scalars import Scalar
from .words import (Letter, LatticePath, Model, NormalForm, ONE, Pair, Word,
                    ZERO, has_star_axis_property, lattice_path, parse_word,
                    reduce_word, word_adjoint, word_text)
from .expr import (DiagonalElement, FourierExpr, OperatorSum, Support,
                   expectation, expectation_of_product, expr_from_document,
                   expr_to_document, multiply, scale_left, scale_right,
                   support, trivial_moment)
from .nc import (MAX_SIZE, NoncrossingPartition, SizeOutOfRangeError, catalan,
                 enumerate_nc, interval_block, kreweras_complement,
                 moebius_by_recursion, moebius_to_top, validate_moebius)
from .cumulants import (MixedCumulantWitness, SizeMismatchError, cumulant,
                        cumulant_table, connected_partitions,
                        default_diag_samples, mixed_cumulants_vanish,
                        moment_table, nested_cumulant, nested_expectation,
                        word_cumulant, word_moebius)
from .compress import (CompressionSplit, CumulantEqualityWitness, Freeness,
                       FreenessVerdict, SameVertexError, VertexSet,
                       check_offdiag_vanishing, closed_form_first_cumulant,
                       cumulant_equality_check, diagonal_compress,
                       diagonal_compression_freeness, freeness_sufficient,
                       off_diagonal_compress, projection_compress,
                       projection_compression_freeness,
                       same_element_compression_freeness)
from .fock import (DepthExceededError, FockBasis, SparseOperator,
                   TruncationRiskError, build_generator, oracle_expectation,
                   required_depth)

__version__ = "0.1.0"
