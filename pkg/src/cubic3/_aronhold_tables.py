"""Coefficient tables of the degree-4 and degree-6 invariants of ternary cubics.

Each term is ``(integer weight, factors)`` where a factor ``"ijk"`` names the raw
coefficient of ``x^i y^j z^k``.  The invariant equals ``sum(weight * prod) / DENOM``.
Generated by ``tools/derive_aronhold.py``.
"""

S_DENOM = 144
S_TERMS = (
    (1, ('111', '111', '111', '111')),
    (-8, ('120', '111', '111', '102')),
    (16, ('120', '120', '102', '102')),
    (24, ('201', '111', '102', '030')),
    (-8, ('201', '111', '111', '021')),
    (-16, ('201', '120', '102', '021')),
    (24, ('201', '120', '111', '012')),
    (-48, ('201', '120', '120', '003')),
    (16, ('201', '201', '021', '021')),
    (-48, ('201', '201', '030', '012')),
    (-48, ('210', '102', '102', '030')),
    (24, ('210', '111', '102', '021')),
    (-8, ('210', '111', '111', '012')),
    (-16, ('210', '120', '102', '012')),
    (24, ('210', '120', '111', '003')),
    (-16, ('210', '201', '021', '012')),
    (144, ('210', '201', '030', '003')),
    (16, ('210', '210', '012', '012')),
    (-48, ('210', '210', '021', '003')),
    (-48, ('300', '102', '021', '021')),
    (144, ('300', '102', '030', '012')),
    (24, ('300', '111', '021', '012')),
    (-216, ('300', '111', '030', '003')),
    (-48, ('300', '120', '012', '012')),
    (144, ('300', '120', '021', '003')),
)

T_DENOM = 216
T_TERMS = (
    (-1, ('111', '111', '111', '111', '111', '111')),
    (12, ('120', '111', '111', '111', '111', '102')),
    (-48, ('120', '120', '111', '111', '102', '102')),
    (64, ('120', '120', '120', '102', '102', '102')),
    (-36, ('201', '111', '111', '111', '102', '030')),
    (12, ('201', '111', '111', '111', '111', '021')),
    (144, ('201', '120', '111', '102', '102', '030')),
    (-24, ('201', '120', '111', '111', '102', '021')),
    (-36, ('201', '120', '111', '111', '111', '012')),
    (-96, ('201', '120', '120', '102', '102', '021')),
    (144, ('201', '120', '120', '111', '102', '012')),
    (72, ('201', '120', '120', '111', '111', '003')),
    (-288, ('201', '120', '120', '120', '102', '003')),
    (-216, ('201', '201', '102', '102', '030', '030')),
    (144, ('201', '201', '111', '102', '030', '021')),
    (-48, ('201', '201', '111', '111', '021', '021')),
    (72, ('201', '201', '111', '111', '030', '012')),
    (-96, ('201', '201', '120', '102', '021', '021')),
    (144, ('201', '201', '120', '102', '030', '012')),
    (144, ('201', '201', '120', '111', '021', '012')),
    (-864, ('201', '201', '120', '111', '030', '003')),
    (-216, ('201', '201', '120', '120', '012', '012')),
    (576, ('201', '201', '120', '120', '021', '003')),
    (64, ('201', '201', '201', '021', '021', '021')),
    (-288, ('201', '201', '201', '030', '021', '012')),
    (864, ('201', '201', '201', '030', '030', '003')),
    (72, ('210', '111', '111', '102', '102', '030')),
    (-36, ('210', '111', '111', '111', '102', '021')),
    (12, ('210', '111', '111', '111', '111', '012')),
    (-288, ('210', '120', '102', '102', '102', '030')),
    (144, ('210', '120', '111', '102', '102', '021')),
    (-24, ('210', '120', '111', '111', '102', '012')),
    (-36, ('210', '120', '111', '111', '111', '003')),
    (-96, ('210', '120', '120', '102', '102', '012')),
    (144, ('210', '120', '120', '111', '102', '003')),
    (144, ('210', '201', '102', '102', '030', '021')),
    (144, ('210', '201', '111', '102', '021', '021')),
    (-720, ('210', '201', '111', '102', '030', '012')),
    (-24, ('210', '201', '111', '111', '021', '012')),
    (648, ('210', '201', '111', '111', '030', '003')),
    (-48, ('210', '201', '120', '102', '021', '012')),
    (1296, ('210', '201', '120', '102', '030', '003')),
    (144, ('210', '201', '120', '111', '012', '012')),
    (-720, ('210', '201', '120', '111', '021', '003')),
    (144, ('210', '201', '120', '120', '012', '003')),
    (-96, ('210', '201', '201', '021', '021', '012')),
    (576, ('210', '201', '201', '030', '012', '012')),
    (-864, ('210', '201', '201', '030', '021', '003')),
    (-216, ('210', '210', '102', '102', '021', '021')),
    (576, ('210', '210', '102', '102', '030', '012')),
    (144, ('210', '210', '111', '102', '021', '012')),
    (-864, ('210', '210', '111', '102', '030', '003')),
    (-48, ('210', '210', '111', '111', '012', '012')),
    (72, ('210', '210', '111', '111', '021', '003')),
    (-96, ('210', '210', '120', '102', '012', '012')),
    (144, ('210', '210', '120', '102', '021', '003')),
    (144, ('210', '210', '120', '111', '012', '003')),
    (-216, ('210', '210', '120', '120', '003', '003')),
    (-96, ('210', '210', '201', '021', '012', '012')),
    (576, ('210', '210', '201', '021', '021', '003')),
    (-864, ('210', '210', '201', '030', '012', '003')),
    (64, ('210', '210', '210', '012', '012', '012')),
    (-288, ('210', '210', '210', '021', '012', '003')),
    (864, ('210', '210', '210', '030', '003', '003')),
    (864, ('300', '102', '102', '102', '030', '030')),
    (-864, ('300', '111', '102', '102', '030', '021')),
    (72, ('300', '111', '111', '102', '021', '021')),
    (648, ('300', '111', '111', '102', '030', '012')),
    (-36, ('300', '111', '111', '111', '021', '012')),
    (-540, ('300', '111', '111', '111', '030', '003')),
    (576, ('300', '120', '102', '102', '021', '021')),
    (-864, ('300', '120', '102', '102', '030', '012')),
    (-720, ('300', '120', '111', '102', '021', '012')),
    (1296, ('300', '120', '111', '102', '030', '003')),
    (72, ('300', '120', '111', '111', '012', '012')),
    (648, ('300', '120', '111', '111', '021', '003')),
    (576, ('300', '120', '120', '102', '012', '012')),
    (-864, ('300', '120', '120', '102', '021', '003')),
    (-864, ('300', '120', '120', '111', '012', '003')),
    (864, ('300', '120', '120', '120', '003', '003')),
    (-288, ('300', '201', '102', '021', '021', '021')),
    (1296, ('300', '201', '102', '030', '021', '012')),
    (-3888, ('300', '201', '102', '030', '030', '003')),
    (144, ('300', '201', '111', '021', '021', '012')),
    (-864, ('300', '201', '111', '030', '012', '012')),
    (1296, ('300', '201', '111', '030', '021', '003')),
    (144, ('300', '201', '120', '021', '012', '012')),
    (-864, ('300', '201', '120', '021', '021', '003')),
    (1296, ('300', '201', '120', '030', '012', '003')),
    (144, ('300', '210', '102', '021', '021', '012')),
    (-864, ('300', '210', '102', '030', '012', '012')),
    (1296, ('300', '210', '102', '030', '021', '003')),
    (144, ('300', '210', '111', '021', '012', '012')),
    (-864, ('300', '210', '111', '021', '021', '003')),
    (1296, ('300', '210', '111', '030', '012', '003')),
    (-288, ('300', '210', '120', '012', '012', '012')),
    (1296, ('300', '210', '120', '021', '012', '003')),
    (-3888, ('300', '210', '120', '030', '003', '003')),
    (-216, ('300', '300', '021', '021', '012', '012')),
    (864, ('300', '300', '021', '021', '021', '003')),
    (864, ('300', '300', '030', '012', '012', '012')),
    (-3888, ('300', '300', '030', '021', '012', '003')),
    (5832, ('300', '300', '030', '030', '003', '003')),
)
