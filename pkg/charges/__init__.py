from .polynomials import Polynomial
from .functions import FUNCTION_CATALOG, ScalarFunction, polynomial_function, scalar_function
from .fields import FIELD_CATALOG, VectorField, linear_trace, polynomial_field, vector_field
from .quadrature import gauss_legendre, integrate_boxes, tensor_rule
from .charge import (Charge, CombinationCharge, DensityCharge, FluxCharge, Function1DCharge,
                     HausdorffSegmentCharge, LebesgueCharge, RestrictedCharge, ZeroCharge,
                     intersect_shapes, iter_charges, shape_boxes)
from .descriptors import CHARGE_KINDS, charge_from_descriptor
from .falsifier import FalsifierSequence, FalsifierVerdict, charge_axiom_falsifier, is_charge_in
from .derivative import DerivativeEstimate, charge_derivative_estimate
