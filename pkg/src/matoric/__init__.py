"""matoric: toric ideals of matroids.

Matroids are given by their bases; kernel ideals of the basis monomial map
are computed by a binomial-only Buchberger engine through lexicographic
block elimination, classified by whether every element is a quadratic
binomial realized by a symmetric exchange, and cross-checked against a
brute-force fiber oracle.
"""

from ._kernel import use_kernel, using_speedups
from .catalog import CatalogEntry, load_catalog, p3_of_7, reproduce_paper, scan_3_connected, table1, table1_entry
from .engine import (
    Binomial,
    EngineError,
    GroebnerBasis,
    buchberger,
    certify_spairs,
    eliminate,
    make_binomial,
    normal_form,
    reduce_binomial,
    reduce_gb,
    s_pair,
)
from .matroid import (
    ExchangeWitness,
    Matroid,
    MatroidError,
    coloops,
    direct_sum,
    dual,
    is_3_connected,
    is_base_sortable,
    is_isomorphic,
    loops,
    parse_matroid,
    parse_matroids,
    format_matroid,
    rank_of_subset,
    relabel,
    symmetric_exchanges,
    two_sum,
    uniform,
    validate_basis_axiom,
)
from .orders import TermOrder, VariableUniverse, compare, lex_order, parse_order_file
from .toric import (
    Fiber,
    GBReport,
    NON_QUADRATIC,
    QUADRATIC_NOT_EXCHANGE,
    WHITE_GB_OK,
    build_graph_ideal,
    classify_gb,
    duality_transport_check,
    elimination_chain,
    enumerate_fibers,
    fiber_graph_connected,
    order_search,
    sorting_gb,
    toric_gb,
    verify_white,
)

__version__ = "0.1.0"
