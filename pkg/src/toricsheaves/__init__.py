"""Torus-localization counts of stable rank 2 reflexive sheaves on P^3 and P^2 x P^1."""

from .assembly import QSeriesProvider, assemble_torsionfree, load_qseries
from .chern import ChernP2P1, ChernP3, chern_p2p1, chern_p3, chern_split_oracle
from .enumeration import (
    DSetElement,
    enumerate_D,
    fixed_locus_census,
    grefl_p3,
    hartshorne_audit,
    normalize_c1,
)
from .laurent import BiLaurentPoly, LaurentPoly, Window, bilaurent_mul, macmahon, poly_add, poly_mul
from .stability import RayWeights, StabilityVerdict, Status, block_weight, classify_p3, is_mu_stable
from .toricdata import (
    CollisionPattern,
    ParityError,
    Space,
    ToricDatum,
    enumerate_patterns,
    euler_m0n,
    p_ij,
    p_ijk,
    u_from_c1,
)
from .wallcross import ChamberReport, WallError, chamber_scan, find_walls, grefl_p2p1

__version__ = "0.1.0"
