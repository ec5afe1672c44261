"""Greedy Vitali selection of a disjoint subfamily of closed balls."""

from dataclasses import dataclass
from typing import Dict, List, Sequence

from errors import InputError

from .packing import Ball, _distance_squared

DILATION = 5


@dataclass
class VitaliSelection:
    selected: List[int]
    certificate: Dict[int, int]

    def to_dict(self) -> dict:
        return {'selected': self.selected,
                'certificate': {str(k): v for k, v in sorted(self.certificate.items())},
                'dilation': DILATION}


def _closed_disjoint(a: Ball, b: Ball) -> bool:
    return _distance_squared(a.center, b.center) > (a.radius + b.radius) ** 2


def vitali_disjoint_subfamily(balls: Sequence[Ball]) -> VitaliSelection:
    """Largest first; each rejected ball is certified by a selected ball it meets."""
    if not balls:
        raise InputError("need at least one ball", 'balls')
    order = sorted(range(len(balls)), key=lambda i: (-balls[i].radius, i))
    selected: List[int] = []
    certificate: Dict[int, int] = {}
    for i in order:
        blocker = next((s for s in selected if not _closed_disjoint(balls[i], balls[s])), None)
        if blocker is None:
            selected.append(i)
            certificate[i] = i
        else:
            certificate[i] = blocker
    return VitaliSelection(sorted(selected), certificate)


def verify_vitali(balls: Sequence[Ball], selection: VitaliSelection) -> bool:
    """Selected balls pairwise disjoint and every ball inside the dilation of its witness."""
    chosen = selection.selected
    for k, i in enumerate(chosen):
        for j in chosen[:k]:
            if not _closed_disjoint(balls[i], balls[j]):
                return False
    for i, ball in enumerate(balls):
        s = selection.certificate.get(i)
        if s not in chosen or not balls[s].dilated(DILATION).contains_ball(ball):
            return False
    return True
