"""Decompositions of tensor powers and their endomorphism algebras."""
from .algebras import (ALGEBRA_A, FIG2, FIG3, K_ALGEBRA, PRESENTATIONS, AlgebraTable, MatchReport,
                       ModeUnsupported, NotFiniteDimensional, PresentedAlgebra, cartan, end_algebra,
                       end_algebra_of_sum, identify_presentation, match_presentation, presented_algebra_dim,
                       presented_structure, radical, radical_layers)
from .decompose import (Decomposition, IsoClassLabel, MixedBlockSummand, RetryExhausted, Summand,
                        TensorPowerDecomposer, UnrecognizedSummand, composition_factors, decompose,
                        decompose_tensor_power, group_into_blocks, identify_summand, is_isomorphic,
                        socle_series)
from .report import BasicAlgebraReport, basic_algebra_report
