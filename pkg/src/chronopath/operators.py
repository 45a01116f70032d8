"""Finite-dimensional realization of the non-commuting Hamiltonian pair.

The pair lives on a truncated oscillator ladder: with quadratures X, P
(so [X, P] = i away from the top Fock level) and beta = sqrt(lam/2),

    H_F = beta (X + P),    H_B = beta (X - P),

which gives [H_B, H_F] = i lam exactly on every basis state except the
last.  Time reversal is componentwise complex conjugation in this basis
(Fock wavefunctions are real), under which X is even and P is odd, so
conj(H_F) = H_B as required.  Parity is diag((-1)^k).

Both step operators exp(i H_B dt) and exp(-i H_F dt) displace the state
by beta*dt along +x (their difference acts along p), so a chain of N
steps drifts by beta*N*dt no matter the path.  The reference state is
therefore a Gaussian wavepacket centred at minus half the drift of the
evolution span the realization is built to host; a centred state would
graze the truncation edge and spoil the reordering identity at the
1e-8 level.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import DimTooSmall, ThetaOutOfRange
from .params import ModelParams
from .peaks import analytic_peaks
from .amplitude import interference

MIN_DIM = 16

# Position width of the reference packet for lam > 0.  Slightly wider than
# the vacuum (1/sqrt(2)): the path sum's differential excursion is along p,
# so trading position sharpness for momentum sharpness buys truncation
# margin exactly where the chain needs it (measured optimum near 0.8).
_PACKET_WIDTH = 0.8

# Momentum width of the momentum-like reference packet used when lam = 0.
_MOMENTUM_PACKET_WIDTH = 0.1


def _ladder(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim))
    a[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(np.arange(1, dim))
    return a


def _quadratures(dim: int):
    a = _ladder(dim)
    ad = a.T
    x = (a + ad) / math.sqrt(2.0)
    p = 1j * (ad - a) / math.sqrt(2.0)
    return x, p


def coherent_state(dim: int, x0: float, p0: float = 0.0) -> np.ndarray:
    """Gaussian wavepacket of vacuum width centred at (x0, p0)."""
    alpha = (x0 + 1j * p0) / math.sqrt(2.0)
    if alpha == 0:
        out = np.zeros(dim, complex)
        out[0] = 1.0
        return out
    n = np.arange(dim)
    log_mag = n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1.0) - abs(alpha) ** 2 / 2.0
    c = np.exp(log_mag + 1j * n * np.angle(alpha))
    return c / np.linalg.norm(c)


def _quadrature_basis(op: np.ndarray):
    """Eigenbasis of a quadrature-like operator, phases fixed on the vacuum.

    Each eigenvector is rotated so its first (Fock vacuum) component is
    real and positive.  Edge eigenvectors can have vacuum components that
    underflow to zero; their phase is left alone (any Gaussian envelope
    used with this basis vanishes there anyway).
    """
    vals, vecs = np.linalg.eigh(op)
    v0 = vecs[0, :]
    mag = np.abs(v0)
    phase = np.where(mag > 0.0, np.conj(v0) / np.where(mag > 0.0, mag, 1.0), 1.0)
    return vals, vecs * phase


def quadrature_wavepacket(op: np.ndarray, centre: float, width: float) -> np.ndarray:
    """Gaussian packet in the eigenbasis of a quadrature-like Hermitian op.

    The weights divide out the vacuum envelope (component 0 of each
    eigenvector over the vacuum wavefunction), so expanding the vacuum's
    own Gaussian returns exactly the vacuum.  Only meaningful for widths
    at or below the vacuum width 1/sqrt(2).
    """
    vals, vecs = _quadrature_basis(op)
    weights = vecs[0, :].real * np.exp(
        vals**2 / 2.0 - (vals - centre) ** 2 / (4.0 * width**2)
    )
    phi = vecs @ weights
    return (phi / np.linalg.norm(phi)).astype(complex)


def gaussian_packet(dim: int, x_centre: float, sigma_x: float) -> np.ndarray:
    """Gaussian wavepacket with position width sigma_x centred at x_centre.

    Narrow packets are assembled in the position eigenbasis; wide ones
    (sigma_x above the vacuum width) in the momentum eigenbasis, where
    their conjugate width 1/(2 sigma_x) is narrow and the node weights
    stay bounded.
    """
    x, p = _quadratures(dim)
    vacuum_width = 1.0 / math.sqrt(2.0)
    if sigma_x <= vacuum_width:
        return quadrature_wavepacket(x, x_centre, sigma_x)
    sigma_p = 1.0 / (2.0 * sigma_x)
    vals, vecs = _quadrature_basis(p)
    weights = (
        vecs[0, :].real
        * np.exp(vals**2 / 2.0 - vals**2 / (4.0 * sigma_p**2))
        * np.exp(-1j * x_centre * vals)
    )
    phi = vecs @ weights
    return (phi / np.linalg.norm(phi)).astype(complex)


def smoothed_grid_state(op: np.ndarray, points: int = 3) -> np.ndarray:
    """Binomially smoothed combination of the eigenvectors nearest zero."""
    vals, vecs = _quadrature_basis(op)
    order = np.argsort(np.abs(vals))
    idx = np.sort(order[:points])
    weights = np.array([math.comb(points - 1, k) for k in range(points)], float)
    phi = vecs[:, idx] @ weights
    return (phi / np.linalg.norm(phi)).astype(complex)


@dataclass
class OperatorRealization:
    """Truncated Hamiltonian pair, symmetry maps, and reference state.

    The interior slice marks the central block of indices on which the
    c-number commutator and the symmetry identities hold to tolerance;
    the top ladder level carries the unavoidable truncation defect.
    """

    dim: int
    lam: float
    h_forward: np.ndarray
    h_backward: np.ndarray
    x_op: np.ndarray
    p_op: np.ndarray
    parity: np.ndarray
    phi: np.ndarray
    evolution_span: float
    phi_kind: str
    _eig_cache: dict = field(default_factory=dict, repr=False)
    _expm_cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def interior(self) -> slice:
        return slice(self.dim // 4, 3 * self.dim // 4)

    # -- time reversal: conjugation in this basis (fixed unitary = identity)

    def time_reverse_state(self, state: np.ndarray) -> np.ndarray:
        return np.conj(state)

    def time_reverse_operator(self, op: np.ndarray) -> np.ndarray:
        """T^-1 op T for a linear operator: componentwise conjugate."""
        return np.conj(op)

    # -- cached Hermitian evolution

    def _eig(self, op_key: str):
        with self._lock:
            hit = self._eig_cache.get(op_key)
        if hit is not None:
            return hit
        mat = {"F": self.h_forward, "B": self.h_backward}[op_key]
        pair = np.linalg.eigh(mat)
        with self._lock:
            self._eig_cache[op_key] = pair
        return pair

    def evolution(self, op_key: str, t: float) -> np.ndarray:
        """exp(i H t) for H = h_forward ('F') or h_backward ('B'), cached."""
        key = (op_key, float(t))
        with self._lock:
            hit = self._expm_cache.get(key)
        if hit is not None:
            return hit
        vals, vecs = self._eig(op_key)
        mat = (vecs * np.exp(1j * vals * t)) @ vecs.conj().T
        with self._lock:
            self._expm_cache[key] = mat
        return mat

    def evolve(self, op_key: str, t: float, state: np.ndarray) -> np.ndarray:
        """Apply exp(i H t) to a state through the eigenbasis (no matrix build)."""
        vals, vecs = self._eig(op_key)
        return vecs @ (np.exp(1j * vals * t) * (vecs.conj().T @ state))


def hermitian_evolution(op: np.ndarray, t: float) -> np.ndarray:
    """One-off exp(i op t) for a Hermitian matrix outside the cached pair."""
    vals, vecs = np.linalg.eigh(op)
    return (vecs * np.exp(1j * vals * t)) @ vecs.conj().T


def build_realization(
    dim: int,
    lam: float,
    evolution_span: float = 0.0,
    phi_kind: str = "wavepacket",
) -> OperatorRealization:
    """Construct the truncated pair and reference state.

    evolution_span is the total F/B evolution time the realization must
    host; the reference wavepacket is centred at -sqrt(lam/2)*span/2 to
    balance the common-mode drift of the step operators.  phi_kind
    'wavepacket' (default) is a near-vacuum-width Gaussian; 'grid' is
    the 3-point smoothed central eigenvector of the sharp quadrature,
    which is broader in energy but tolerates far less evolution before
    the truncation edge bites.

    For lam = 0 the pair degenerates to the single T-invariant
    Hamiltonian X and the reference state is a momentum-narrow packet,
    which is sharp in time with respect to it.
    """
    if dim < MIN_DIM:
        raise DimTooSmall(f"dim must be >= {MIN_DIM}, got {dim}")
    if lam < 0:
        raise ValueError("lam must be >= 0")
    x, p = _quadratures(dim)
    parity = np.diag(np.where(np.arange(dim) % 2 == 0, 1.0, -1.0))
    if lam == 0.0:
        h_f = x.astype(complex)
        h_b = h_f.copy()
        if phi_kind == "wavepacket":
            phi = quadrature_wavepacket(p, 0.0, _MOMENTUM_PACKET_WIDTH)
        elif phi_kind == "grid":
            phi = smoothed_grid_state(p)
        else:
            raise ValueError(f"unknown phi_kind {phi_kind!r}")
    else:
        beta = math.sqrt(lam / 2.0)
        h_f = beta * (x + p)
        h_b = beta * (x - p)
        x0 = -beta * evolution_span / 2.0
        if phi_kind == "wavepacket":
            phi = gaussian_packet(dim, x0, _PACKET_WIDTH)
        elif phi_kind == "grid":
            phi = smoothed_grid_state(x)
        else:
            raise ValueError(f"unknown phi_kind {phi_kind!r}")
    return OperatorRealization(
        dim=dim,
        lam=lam,
        h_forward=h_f,
        h_backward=h_b,
        x_op=x,
        p_op=p,
        parity=parity,
        phi=phi,
        evolution_span=evolution_span,
        phi_kind=phi_kind,
    )


# ---------------------------------------------------------------------------
# path sums


def path_sum_direct(real: OperatorRealization, n_steps: int, delta_t: float) -> np.ndarray:
    """Iterated product [exp(i H_B dt) + exp(-i H_F dt)]^N phi / 2**N.

    Two matrix products per level, never 2^N; the 1/2 per step keeps the
    vector finite for large N.  The returned vector is unnormalized in
    the quantum sense (callers normalize).
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    a = real.evolution("B", delta_t)
    b = real.evolution("F", -delta_t)
    state = real.phi.astype(complex)
    for _ in range(n_steps):
        state = 0.5 * (a @ state + b @ state)
    return state


def path_sum_closed(real: OperatorRealization, n_steps: int, delta_t: float) -> np.ndarray:
    """Interference-weighted closed form of the same state.

    sum_n I(N, n; z) exp(i H_B (N-n) dt) exp(-i H_F n dt) phi / 2**N,
    assembled with a Horner recursion in exp(i H_B dt) so the cost is
    2N matrix products.  z = dt**2 lam.  Propagates SingularDenominator
    when z sits on the pole lattice.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    sigma_t = delta_t * math.sqrt(n_steps)
    params = ModelParams.from_lambda(sigma_t, real.lam, n_steps)
    weights = np.empty(n_steps + 1, complex)
    scale = -n_steps * math.log(2.0)
    for n in range(n_steps + 1):
        amp = interference(params, n)
        weights[n] = (
            0.0
            if amp.is_zero
            else math.exp(amp.log_mag + scale)
            * complex(math.cos(amp.phase), math.sin(amp.phase))
        )
    a = real.evolution("B", delta_t)
    b = real.evolution("F", -delta_t)
    forward = real.phi.astype(complex)
    state = weights[0] * forward
    for n in range(1, n_steps + 1):
        forward = b @ forward
        state = a @ state + weights[n] * forward
    return state


def fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """|<u|v>|^2 / (<u|u><v|v>)."""
    return abs(np.vdot(u, v)) ** 2 / (np.vdot(u, u).real * np.vdot(v, v).real)


@dataclass(frozen=True, slots=True)
class PathExpansionResult:
    state_direct: np.ndarray
    state_closed: np.ndarray
    fidelity: float


def path_sum_compare(real: OperatorRealization, n_steps: int, delta_t: float) -> PathExpansionResult:
    """Evaluate both path-sum routes and their fidelity."""
    direct = path_sum_direct(real, n_steps, delta_t)
    closed = path_sum_closed(real, n_steps, delta_t)
    return PathExpansionResult(direct, closed, fidelity(direct, closed))


# ---------------------------------------------------------------------------
# reorder identity and coarse graining


def bch_reorder_check(real: OperatorRealization, t1: float, t2: float) -> float:
    """Residual of exp(-iH_F t1) exp(iH_B t2) phi vs the reordered product.

    The two orderings agree up to the phase exp(-i lam t1 t2); the
    residual is the relative vector norm difference after aligning with
    the numerically extracted phase (see bch_reorder_phase).
    """
    lhs = real.evolve("F", -t1, real.evolve("B", t2, real.phi))
    rhs = real.evolve("B", t2, real.evolve("F", -t1, real.phi))
    overlap = np.vdot(rhs, lhs)
    aligned = rhs * (overlap / abs(overlap)) if overlap != 0 else rhs
    return float(np.linalg.norm(lhs - aligned) / np.linalg.norm(lhs))


def bch_reorder_phase(real: OperatorRealization, t1: float, t2: float) -> float:
    """Numerically extracted reorder phase, to compare against lam*t1*t2.

    Returns -arg(<reordered|original>) in (-pi, pi].
    """
    lhs = real.evolve("F", -t1, real.evolve("B", t2, real.phi))
    rhs = real.evolve("B", t2, real.evolve("F", -t1, real.phi))
    return float(-np.angle(np.vdot(rhs, lhs)))


def coarse_grain_hamiltonian(real: OperatorRealization, params: ModelParams) -> np.ndarray:
    """H_F a_plus - H_B a_minus, the generator surviving coarse graining."""
    pk = analytic_peaks(params)
    return pk.a_plus * real.h_forward - pk.a_minus * real.h_backward


def coarse_grain_state(
    real: OperatorRealization, params: ModelParams, t_c: float | None = None
) -> np.ndarray:
    """Unit-norm exp(-i (H_F a_plus - H_B a_minus) t_c) phi.

    t_c defaults to the representative clock time of params.  Raises
    ThetaOutOfRange outside 2pi < theta < 4pi (inherited from the peak
    weights a_pm).
    """
    pk = analytic_peaks(params)
    if t_c is None:
        t_c = pk.t_c_peak
    gen = pk.a_plus * real.h_forward - pk.a_minus * real.h_backward
    state = hermitian_evolution(gen, -t_c) @ real.phi
    return state / np.linalg.norm(state)


def schrodinger_residual(
    real: OperatorRealization, params: ModelParams, h: float, t_c: float | None = None
) -> float:
    """Central-difference defect of the coarse-grained equation of motion.

    || (state(t+h) - state(t-h)) / 2h + i G state(t) ||, which scales as
    O(h^2) because state(t) = exp(-iGt) phi satisfies the equation
    exactly.
    """
    pk = analytic_peaks(params)
    if t_c is None:
        t_c = pk.t_c_peak
    gen = pk.a_plus * real.h_forward - pk.a_minus * real.h_backward
    vals, vecs = np.linalg.eigh(gen)
    phi_e = vecs.conj().T @ real.phi

    def at(t):
        return np.exp(-1j * vals * t) * phi_e

    diff = (at(t_c + h) - at(t_c - h)) / (2.0 * h)
    # norms are basis independent; stay in the eigenbasis throughout
    return float(np.linalg.norm(diff + 1j * vals * at(t_c)))


def phenomenological_commutator(real: OperatorRealization, params: ModelParams) -> complex:
    """Interior scalar of [H_phen, T^-1 H_phen T] with H_phen = H_F a+ - H_B a-.

    The coarse-grained pair keeps a c-number commutator, rescaled to
    -i (theta / 2 pi) lam.
    """
    h_phen = coarse_grain_hamiltonian(real, params)
    h_phen_rev = real.time_reverse_operator(h_phen)
    comm = h_phen @ h_phen_rev - h_phen_rev @ h_phen
    block = comm[real.interior, real.interior]
    return complex(np.mean(np.diag(block)))


def parity_translation_check(real: OperatorRealization, x_shift: float) -> float:
    """Norm of (Par^-1 exp(-i P x') Par - exp(i P x')) on the interior block."""
    step = hermitian_evolution(real.p_op, -x_shift)
    inverse_step = hermitian_evolution(real.p_op, x_shift)
    conj = real.parity @ step @ real.parity  # parity is its own inverse
    diff = (conj - inverse_step)[:, real.interior]
    return float(np.linalg.norm(diff, ord=2))


def project_onto_time_translates(
    real: OperatorRealization, state: np.ndarray, n_steps: int, delta_t: float
) -> np.ndarray:
    """|<phi_m|state>| for phi_m = exp(-i H_F (2m - N) dt) phi, m = 0..N.

    With a T-invariant pair this extracts the temporal profile of a path
    sum relative to the time-translated reference state.
    """
    vals, vecs = np.linalg.eigh(real.h_forward)
    phi_e = vecs.conj().T @ real.phi
    state_e = vecs.conj().T @ state
    out = np.empty(n_steps + 1)
    for m in range(n_steps + 1):
        t_m = (2 * m - n_steps) * delta_t
        out[m] = abs(np.vdot(np.exp(-1j * vals * t_m) * phi_e, state_e))
    return out
