"""A bounded search for inner-horn filling sequences, and an independent replay.

A step fills one inner horn: it names a missing chain c with n + 1 >= 3
entries and an index 0 < k < n such that every face of c except the k-th is
already present and the k-th face is absent; both are then added.  A sequence
of steps ending at the full nerve certifies that the inclusion is inner
anodyne.  Failing to find one proves nothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotSubcomplex
from .nerve import ChainComplexSSet, all_chains, faces_of


@dataclass(frozen=True)
class HornStep:
    chain: tuple  # ambient indices, increasing
    k: int

    @property
    def dim(self) -> int:
        return len(self.chain) - 1

    @property
    def face(self) -> tuple:
        return self.chain[:self.k] + self.chain[self.k + 1:]


@dataclass
class InnerAnodyneCertificate:
    steps: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __bool__(self) -> bool:
        # a certificate is a success even with no steps; Unknown is the falsy outcome
        return True

    def __iter__(self):
        return iter(self.steps)

    def to_json(self, ambient, ambient_id: str = "ambient", label=str) -> dict:
        return {
            "ambient": ambient_id,
            "steps": [{"chain": [label(ambient.elements[i]) for i in s.chain], "k": s.k} for s in self.steps],
        }


@dataclass
class Unknown:
    """The search gave up; this is not a proof that no certificate exists."""

    reason: str
    explored: int
    missing: int

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"unknown": self.reason, "explored": self.explored, "missing": self.missing}


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    failed_step: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _full_chains(sub: ChainComplexSSet) -> set:
    return set(all_chains(sub.ambient, sub.max_dim))


class _Search:
    """Mutable search state with O(n) incremental updates per added chain."""

    def __init__(self, sub: ChainComplexSSet):
        full = _full_chains(sub)
        extra = sub.chains - full
        if extra:
            raise NotSubcomplex(f"{sorted(extra)[0]} is not a chain of the ambient nerve")
        self.present = set(sub.chains)
        self.cofaces = {c: [] for c in full}
        for y in full:
            for _, f in faces_of(y):
                self.cofaces[f].append(y)
        self.missing_faces = {}
        self.ready = set()
        self.missing = full - self.present
        for c in self.missing:
            self.missing_faces[c] = sum(f not in self.present for _, f in faces_of(c))
        for c in self.missing:
            self._refresh(c)

    def _horn_index(self, c):
        for k, f in faces_of(c):
            if f not in self.present:
                return k
        return None

    def _refresh(self, c):
        ok = False
        if c in self.missing and len(c) >= 3 and self.missing_faces[c] == 1:
            k = self._horn_index(c)
            ok = 0 < k < len(c) - 1
        if ok:
            self.ready.add(c)
        else:
            self.ready.discard(c)

    def _add(self, c):
        self.present.add(c)
        self.missing.discard(c)
        self.ready.discard(c)
        for y in self.cofaces[c]:
            if y in self.missing:
                self.missing_faces[y] -= 1
                self._refresh(y)

    def _remove(self, c):
        self.present.discard(c)
        self.missing.add(c)
        for y in self.cofaces[c]:
            if y in self.missing:
                self.missing_faces[y] += 1
                self._refresh(y)
        self._refresh(c)

    def apply(self, c) -> HornStep:
        k = self._horn_index(c)
        step = HornStep(c, k)
        self._add(step.face)
        self._add(c)
        return step

    def undo(self, step: HornStep):
        self._remove(step.chain)
        self._remove(step.face)

    def candidates(self) -> list:
        return sorted(self.ready, key=lambda c: (len(c), c))


def certify_inner_anodyne(sub: ChainComplexSSet, budget: int = 10**6):
    """Depth-first search over horn fillings, smallest chain first.

    ``budget`` bounds the number of step applications, including ones later
    undone by backtracking.  Returns a certificate or an ``Unknown``.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    st = _Search(sub)
    if not st.missing:
        return InnerAnodyneCertificate([])
    steps, frames, used = [], [(st.candidates(), 0)], 0
    while frames:
        if not st.missing:
            return InnerAnodyneCertificate(list(steps))
        options, i = frames[-1]
        if i == len(options):
            frames.pop()
            if steps:
                st.undo(steps.pop())
            continue
        frames[-1] = (options, i + 1)
        if used >= budget:
            return Unknown(f"budget of {budget} steps exhausted", used, len(st.missing))
        used += 1
        steps.append(st.apply(options[i]))
        frames.append((st.candidates(), 0))
    return Unknown("no sequence of inner horn fillings reaches the full nerve", used, len(st.missing))


def verify_certificate(sub: ChainComplexSSet, cert: InnerAnodyneCertificate) -> CertificateCheck:
    """Replay ``cert`` from scratch against the ambient nerve of ``sub``."""
    strict = sub.ambient.strict
    present = set(sub.chains)
    for i, step in enumerate(cert):
        c, k = tuple(step.chain), step.k
        n = len(c) - 1
        if sub.max_dim is not None and n > sub.max_dim:
            return CertificateCheck(False, i, "chain exceeds the truncation level")
        if any(not strict[a, b] for a, b in zip(c, c[1:])):
            return CertificateCheck(False, i, "not a chain of the ambient poset")
        if n < 2 or not 0 < k < n:
            return CertificateCheck(False, i, "horn is not inner")
        if c in present:
            return CertificateCheck(False, i, "chain already present")
        for j, f in faces_of(c):
            if (j == k) == (f in present):
                return CertificateCheck(False, i, f"face {j} is {'present' if j == k else 'missing'}")
        present.add(c)
        present.add(c[:k] + c[k + 1:])
    if present != _full_chains(sub):
        return CertificateCheck(False, None, "replay does not reach the full nerve")
    return CertificateCheck(True)
