"""Human-in-the-loop multi-objective design optimization workbench for the
Go-Go 3D-touch interaction technique, with a synthetic-designer harness."""

from .domain import DesignParams, TargetSpec, decode_unit, encode_unit
from .evaluation import EvaluationResult, TrialOutcome
from .mobo import MoboConfig
from .oracle import SkillProfile, StrategyConfig

__all__ = [
    "DesignParams",
    "TargetSpec",
    "decode_unit",
    "encode_unit",
    "EvaluationResult",
    "TrialOutcome",
    "MoboConfig",
    "SkillProfile",
    "StrategyConfig",
]

__version__ = "0.1.0"
