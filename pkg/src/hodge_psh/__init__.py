"""Hodge norms, Deligne splittings and plurisubharmonicity checks on period charts."""

from .chart import (
    HorizontalDisc, NormValue, disc_from_free, disc_from_json, hodge_norms, hodge_norms_formula,
    make_horizontal_disc, q_functions, residuals, xi_frame,
)
from .diamond import DiamondTable, check_diamond, deligne_splitting, diamond, weight_filtration
from .errors import *  # noqa: F401,F403
from .hodge_core import KINDS, DegenerationModel, build_model, wedge_space
from .logjet import LeadingTerm, LogPoly, WirtingerJet2, logpoly_leading_term
from .psh import (
    StepClassification, classify_step, dominant_sign_check, fibre_minimum_check, levi,
    mean_value_check, tangent_nonnegativity, transverse_divergence,
)

__version__ = "0.1.0"
