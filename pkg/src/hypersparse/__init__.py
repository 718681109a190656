"""Spectral hypergraph sparsification by oblivious vertex sampling.

Modes: static (vertex-sampling or spanner recovery engines), online
insert-only, fully dynamic, and linear-sketch / dynamic-stream, plus an
exact verification harness for desk-scale validation.
"""

from ._kernels import HAVE_C_KERNEL
from .config import RunConfig
from .dynamic import (Change, DecrementalInstance, DynamicConfig, DynamicOp,
                      DynamicState, decremental_delete, decremental_init,
                      dynamic_update, intersections_for)
from .hypergraph import (ArityBucket, Hyperedge, Hypergraph,
                         bucket_by_arity_and_weight, cut_value,
                         gen_online_lower_bound, gen_random_hypergraph,
                         parse_hypergraph, parse_stream, quadratic_form,
                         quadratic_form_batch, serialize_hypergraph,
                         serialize_stream)
from .multigraph import MultiEdge, MultiGraph, clique_expand, vertex_sample
from .online import (OnlineConfig, OnlineState, online_finalize,
                     online_insert)
from .recovery import (hypergraph_sparsify_spanner, recursive_recovery,
                       repeated_recursive_recovery_spanner)
from .resistance import (CapacityError, ResistanceReport,
                         effective_resistance_all_approx,
                         effective_resistance_all_exact,
                         effective_resistance_exact, er_sample,
                         er_sample_indices)
from .sketch import (ERSamplerSketch, HeavyHitterSketch, HypergraphSketch,
                     L2Estimator, SketchConfig, er_sketch_decode, hh_decode,
                     hh_update, naive_sketch, sketch_construct,
                     sketch_recover)
from .spanner import (Spanner, SpannerBundle, bundle_size, bundle_try_insert,
                      spanner_try_insert, stretch_for)
from .verify import (VerificationReport, collective_energy,
                     max_relative_error, verify_spectral)
from .vs_sparsifier import (SamplingPlan, SparsifierOutput, SparsifyConfig,
                            effective_epsilon, plan_rounds, sparsify_static,
                            vs)

__version__ = "0.1.0"
