from .subordinate import (AssignedCube, SubordinatePartition, inside_double, meets_ball, qualifies,
                          subordinate_partition)
from .reflection import ReflectionDecomposition, SignedBox, check_box_hypotheses, reflection_decomposition
from .doubling import DoublingResult, find_doubling_radius
