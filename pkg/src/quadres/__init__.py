# -*- coding: utf-8 -*-

__version__ = '0.1.0'

from quadres import arith
from quadres import discriminant
from quadres import charsum
from quadres import resonator
from quadres import resonance
from quadres import io
from quadres import verify
from quadres.discriminant import FundamentalDiscriminant, DiscriminantRange
from quadres.resonator import ResonatorSet

__all__ = ['arith', 'discriminant', 'charsum', 'resonator', 'resonance', 'io', 'verify',
           'FundamentalDiscriminant', 'DiscriminantRange', 'ResonatorSet']
