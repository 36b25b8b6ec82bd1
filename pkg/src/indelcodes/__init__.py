"""Explicit linear and half-linear codes for insertion/deletion channels."""

from .bounds import (
    ConfusabilityWitness,
    SubfieldLinearCode,
    brute_indel_capability,
    check_witness,
    find_confusable_pair,
    half_singleton_bound,
    make_subfield_code,
)
from .channel import Edit, IndelPattern, adversarial_pattern, apply_pattern, random_pattern
from .editdist import Alignment, lcs_align, lcs_length, levenshtein
from .galois import FieldSpec, Fq, make_field
from .halflinear import HalfLinearCode, decode_hl, encode_hl
from .innercode import DecodingError, InnerCode, decode_inner, encode_inner, make_inner_code
from .linearcode import LinearIndelCode, Segmentation, choose_ell, decode_lin, encode_lin, flat, pad, segment
from .matcher import MatchReport, match_sync
from .syncseq import SyncSequence, VerificationMode, gen_self_matching, verify_self_matching

__version__ = "0.1.0"
