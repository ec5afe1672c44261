from .verdicts import CONSISTENT, FALSIFIER_NOTE, OBSERVED, REFUTED, EpsilonRow, HarnessReport, verdict_for
from .claims import LINE_NOTIONS, PACKING_NOTIONS, PARTITION_NOTIONS, IntegralClaim, Notion
from .seminorms import P_BAR, Q_BAR, SeminormQuery, SeminormResult, base_level, seminorm_lower_bound
from .packing_check import PackingScore, check_packing_integral, definite_value, score_packing
from .partition_check import PartitionSample, check_bv_partition_integral, partition_sum, sample_partition
from .henstock import (CutoffStep, HKIntegral, adaptive_gauss, definite_line_value, hk_check,
                       hk_integrate_adaptive)
from .monotone import MCRow, MonotoneComparison, mc_alpha_check, mc_monotone_comparison
from .gauss_green import GaussGreenResult, gauss_green_verify
from .restriction import RestrictionReport, in_region_claim, restriction_consistency, zero_extension_claim
from .diagram import DiagramReport, DiagramRow, run_diagram
