"""Majority illusion in labelled social networks: detection, search, elimination and hardness gadgets."""

from .errors import *  # noqa: F401,F403
from .network import (
    BLUE,
    RED,
    Colour,
    EditPlan,
    IllusionReport,
    Labelling,
    LabelledNetwork,
    SocialNetwork,
    apply_edit_plan,
    illusion_report,
    is_q_illusion,
    local_winner,
    majority_winner,
    margin_of_victory,
)
from .solvers import (
    eliminate_exhaustive,
    eliminate_greedy,
    export_illusion_cnf,
    solve_one_illusion,
    solve_q_illusion_bruteforce,
    verify_plan,
)
from .thresholds import (
    as_fraction,
    threshold_h_plus,
    threshold_h_sharp,
    threshold_h_star,
)

__version__ = "0.1.0"
