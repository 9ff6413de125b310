"""A graph on n vertices with n + 36t edges whose cycles all differ in length.

Modules: :mod:`.catalog` (parameters and subgraph catalog), :mod:`.ledger`
(closed-form cycle spectrum and accounting), :mod:`.builder` (explicit graphs
and edge-list streaming), :mod:`.oracle` (independent cycle enumeration and
small-n exhaustive search), :mod:`.cli`.
"""

__version__ = "0.1.0"

from .catalog import (  # noqa: E402
    ChordedCycleSpec,
    Kind,
    Params,
    SubgraphDescriptor,
    chorded_spec,
    enumerate_subgraphs,
    validate_params,
)
from .ledger import (  # noqa: E402
    bound_report,
    build_ledger,
    chord_cycle_count,
    count_totals,
    cycles_of_spec,
)
from .builder import Graph, materialize_subgraph, stream_edges  # noqa: E402
from .oracle import (  # noqa: E402
    enumerate_cycles,
    has_distinct_cycle_lengths,
    max_edges_distinct_cycles,
)
