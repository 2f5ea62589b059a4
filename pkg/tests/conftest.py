"""Shared fixtures: the fruit space used across the test suite."""

import pytest

from conceptspace import Concept, Space, make_core, make_cuboid, make_weights

INF = float("inf")

FRUIT_DOMAINS = {"color": (0,), "shape": (1,), "taste": (2,)}
ALL_DOMAINS = frozenset(FRUIT_DOMAINS)


def fruit_weights(color: float, shape: float, taste: float):
    return make_weights(
        {"color": color, "shape": shape, "taste": taste},
        {"color": {0: 1.0}, "shape": {1: 1.0}, "taste": {2: 1.0}},
    )


def build_fruit_space() -> Space:
    return Space(3, FRUIT_DOMAINS)


def build_fruit_concepts(space: Space) -> dict[str, Concept]:
    def concept(bounds, mu0, c, w, domains=ALL_DOMAINS):
        cuboids = [make_cuboid(lo, hi, domains, space) for lo, hi in bounds]
        return Concept(make_core(cuboids, domains, space), mu0, c, w)

    return {
        "pear": concept(
            [((0.5, 0.4, 0.35), (0.7, 0.6, 0.45))],
            1.0,
            12.0,
            fruit_weights(0.5, 1.25, 1.25),
        ),
        "orange": concept(
            [((0.8, 0.9, 0.6), (0.9, 1.0, 0.7))],
            1.0,
            15.0,
            fruit_weights(1.0, 1.0, 1.0),
        ),
        "lemon": concept(
            [((0.7, 0.45, 0.0), (0.8, 0.55, 0.1))],
            1.0,
            20.0,
            fruit_weights(0.5, 0.5, 2.0),
        ),
        "granny_smith": concept(
            [((0.55, 0.7, 0.35), (0.6, 0.8, 0.45))],
            1.0,
            25.0,
            fruit_weights(1.0, 1.0, 1.0),
        ),
        "apple": concept(
            [
                ((0.5, 0.65, 0.35), (0.8, 0.8, 0.5)),
                ((0.65, 0.65, 0.4), (0.85, 0.8, 0.55)),
                ((0.7, 0.65, 0.45), (1.0, 0.8, 0.6)),
            ],
            1.0,
            10.0,
            fruit_weights(0.5, 1.5, 1.0),
        ),
        "red": concept(
            [((0.9, -INF, -INF), (1.0, INF, INF))],
            1.0,
            20.0,
            make_weights({"color": 1.0}, {"color": {0: 1.0}}),
            domains=frozenset({"color"}),
        ),
    }


@pytest.fixture(scope="session")
def space() -> Space:
    return build_fruit_space()


@pytest.fixture(scope="session")
def fruit(space) -> dict[str, Concept]:
    return build_fruit_concepts(space)
