"""Plane cubics over Q(w): classification, flexes, the Hesse pencil and the Hessian group."""

from .classify import CubicType, SingularLocus, classify, is_elliptic, singular_points
from .flexsolve import FlexResult, fiber_profile, fl_dimension, flexes_numeric
from .hesse import (
    PencilParam,
    cubics_through_flexes,
    flex_add,
    in_pencil,
    incidence_report,
    pencil_member,
    to_hesse_normal_form,
)
from .hessgroup import enumerate_hes, generators, h12_check, realize_collineation, stabilizer, theta
from .parsing import parse_cubic, parse_point, parse_scalar
from .poly import Cubic, Poly, act, hessian, sl3_orbit_dim
from .projective import PLine, PPoint, PTransform, transform_from_frames
from .scalar import Eis, W

__version__ = "0.1.0"
