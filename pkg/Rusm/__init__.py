"""Regularized unconstrained submodular maximization: local search, Double Greedy, frontier curves and symmetry-gap checks.
    :version: 1.2.0
    :license: MIT, see LICENSE for more details.
"""


__version__ = '1.2.0'

# Main class
from Rusm.Rusm import Rusm

# Instances
from Rusm.Internal.SetFunctions import RusmInstance, LinearWeights, CallableOracle, TableOracle, CachedOracle, InstanceFlags, EllSign
from Rusm.Internal.Instances import HardFamily, HardInstanceDescriptor, make_hard_instance, make_random_instance
from Rusm.Internal.InstanceIo import load_instance, save_instance

# Algorithms
from Rusm.Internal.LocalSearch import LsConfig, MarginalMode, local_search
from Rusm.Internal.DoubleGreedy import double_greedy_det, double_greedy_rand
from Rusm.Internal.BruteForce import brute_force_opt
from Rusm.Internal.Experiment import ExperimentSpec, run_experiment
from Rusm.Internal.Frontiers import CurveId, NegativeOptConfig, emit_curves
from Rusm.Internal.SymmetryGap import verify_gap

# Exceptions
from Rusm.Internal.RusmErrors import RusmException, ParameterDomainError, ExactLimitError, SchemaError, InstanceFileError, GroupStructureError

# Callback Event Argument prototypes
from Rusm.Internal.TrialEventArgs import TrialEventArgs

# Logging Mode
from Rusm.Internal.RunLogger import LoggingMode
