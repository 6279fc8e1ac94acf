"""Incremental global k-means family with a benchmark harness.

The package solves every k-cluster sub-problem from 1 up to K by adding one
center at a time. Four strategies pick the new center's starting spots:
full enumeration over the datapoints, the top-L guaranteed-reduction points
(FGKM), and L squared-distance-weighted draws (global k-means++, batch or
sequential). Classic k-means++ and uniform seeding are included as restart
baselines, and a CLI reproduces error-versus-k and timing comparisons.
"""

from .bench import (BlobSpec, ExperimentConfig, ExperimentReport, FileSpec,
                    ReportRow, emit_report, load_source, parse_report,
                    run_experiment)
from .core import CenterSet, ClusteringSolution, Dataset, clustering_error, stirling2
from .evaluation import aggregate_iterations, error_difference, percentage_error
from .incremental import (CandidateSet, EmptyCandidates, IncrementalRun,
                          batch_sample, fgkm, fgkm_bounds, global_kmeans,
                          global_kmeanspp, sequential_sample, solve_k1)
from .ingestion import (EmptyDataset, ParseError, gen_gaussian_blobs,
                        load_matrix, minmax_normalize)
from .lloyd import LloydConfig, assign, run_lloyd, update_centers
from .seeding import (DegenerateDistribution, d2_probabilities, kmeanspp_seed,
                      make_rng, sample_index, substream, uniform_seed)

__version__ = "0.1.0"

__all__ = [
    "BlobSpec", "CandidateSet", "CenterSet", "ClusteringSolution", "Dataset",
    "DegenerateDistribution", "EmptyCandidates", "EmptyDataset",
    "ExperimentConfig", "ExperimentReport", "FileSpec", "IncrementalRun",
    "LloydConfig", "ParseError", "ReportRow", "aggregate_iterations",
    "assign", "batch_sample", "clustering_error", "d2_probabilities",
    "emit_report", "error_difference", "fgkm", "fgkm_bounds",
    "gen_gaussian_blobs", "global_kmeans", "global_kmeanspp", "kmeanspp_seed",
    "load_matrix", "load_source", "make_rng", "minmax_normalize", "parse_report",
    "percentage_error", "run_experiment", "run_lloyd", "sample_index",
    "sequential_sample", "solve_k1", "stirling2", "substream",
    "uniform_seed", "update_centers",
]
