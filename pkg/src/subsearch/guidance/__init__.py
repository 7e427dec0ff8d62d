from subsearch.guidance.values import (
    ConstantValue, FittedValue, HeuristicValue, NoiseSpec, NoisyValue,
    OracleValue, ValueEstimator,
)
from subsearch.guidance.policies import FittedPolicy, HeuristicSoftmaxPolicy, Policy
from subsearch.guidance.generators import (
    BeginnerRollout, ChildMirrorGenerator, ExpertRolloutGenerator,
    PolicyRollout, ReversePathExpert, SubgoalProposal,
)
from subsearch.guidance.cllp import CLLP, ReachResult
from subsearch.guidance.features import feature_map

__all__ = [
    "ValueEstimator", "OracleValue", "HeuristicValue", "FittedValue",
    "ConstantValue", "NoisyValue", "NoiseSpec", "Policy",
    "HeuristicSoftmaxPolicy", "FittedPolicy", "SubgoalProposal",
    "ExpertRolloutGenerator", "ChildMirrorGenerator", "BeginnerRollout",
    "PolicyRollout", "ReversePathExpert", "CLLP", "ReachResult", "feature_map",
]
