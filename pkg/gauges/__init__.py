from .gauge import (GAUGE_KINDS, Gauge, ZeroSet, boundary_distance_gauge, constant_gauge,
                    distance_gauge, gauge_from_descriptor, hk_oscillatory_gauge)
from .packing import (Ball, FinenessReport, Packing, PartitionItem, TaggedPartition, is_delta_fine,
                      load_balls, sample_packing, sample_point)
from .cousin import cousin_partition_1d
from .vitali import VitaliSelection, verify_vitali, vitali_disjoint_subfamily
