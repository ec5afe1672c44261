from .dyadic import Coverage, DyadicCube, Face, Figure, MIN_LEVEL, dyadic_side, split_face
from .intervals import BVSet1D, Interval, shape_from_dict
from .constants import Constants, unit_ball_volume
from .measures import (Diameter, diameter_with_tag, is_eps_regular, perimeter, regularity,
                       regularity_squared, relative_perimeter, relative_perimeter_in_open,
                       symmetric_difference_measure, volume)
from .isoperimetry import (FALSIFIED, PASSED, IsoperimetricCheck, SampledVerdict, VoxelGrid,
                           is_eps_isoperimetric_sampled, isoperimetric_deficiency)
from .approximation import dyadic_approximation
