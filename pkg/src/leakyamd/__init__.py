"""Algebraic manipulation detection codes that stay secure when storage leaks."""

from .adversary import (AttackReport, Distribution, EnumerationCapExceeded, conditional_min_entropy,
                        empirical_delta_strong, empirical_delta_weak, exhaustive_offset_attack,
                        min_entropy, optimal_lv_attack, rr_robustness_attack, statistical_distance,
                        wt2_secrecy_check)
from .amd import REJECT, AmdParams, amd_decode, amd_encode
from .field import FieldElement, primitive_element
from .lvamd import (LvStrongInstance, LvWeakInstance, lv_strong_decode, lv_strong_encode,
                    lv_weak_decode, lv_weak_encode, lv_weak_matrix)
from .rampsss import (RampScheme, RobustRampScheme, ShareVector, ramp_recover, ramp_share,
                      rr_recover, rr_share)
from .wiretap2 import Wt2Instance, wt2_decode, wt2_encode

__version__ = "0.1.0"
