import numpy as np
import pytest

from flickerkit.detector import detect_sequence, flicker_ratio
from flickerkit.errors import InputError
from flickerkit.palette import PaletteColor, palette_code
from flickerkit.synth import InjectionSpec, generate, pick_locations


def test_fraction_zero_gives_constant_sequence():
    spec = InjectionSpec(width=8, height=8, frame_count=4, fraction=0.0, seed=1)
    seq, maps = generate(spec)
    assert len(seq) == 4
    for frame in seq:
        assert np.array_equal(frame, seq[0])
    assert len(maps) == 3
    for m in maps:
        assert not m.flags.any()


def test_fraction_one_single_pixel():
    spec = InjectionSpec(width=1, height=1, frame_count=2, fraction=1.0, seed=0)
    seq, maps = generate(spec)
    assert np.array_equal(seq[0][0, 0], palette_code(PaletteColor.BLACK))
    assert np.array_equal(seq[1][0, 0], palette_code(PaletteColor.WHITE))
    assert maps[0].flags.all()


def test_exact_location_count():
    spec = InjectionSpec(width=100, height=100, frame_count=2, fraction=0.06, seed=42)
    _, maps = generate(spec)
    assert maps[0].count == 600


def test_rounding_of_fraction_times_pixels():
    # 0.1 * 25 = 2.5 rounds half up to 3
    spec = InjectionSpec(width=5, height=5, frame_count=2, fraction=0.1, seed=0)
    _, maps = generate(spec)
    assert maps[0].count == 3


def test_even_frames_uniform_odd_frames_carry_injection():
    spec = InjectionSpec(width=10, height=6, frame_count=5, fraction=0.2, seed=7)
    seq, maps = generate(spec)
    base = palette_code(spec.base_color)
    flick = palette_code(spec.flicker_color)
    flags = maps[0].flags
    for i, frame in enumerate(seq):
        if i % 2 == 0:
            assert (frame == np.array(base)).all()
        else:
            assert np.array_equal(frame[flags], np.tile(flick, (flags.sum(), 1)))
            assert np.array_equal(frame[~flags], np.tile(base, ((~flags).sum(), 1)))


def test_all_pairs_share_the_same_ground_truth():
    spec = InjectionSpec(width=12, height=9, frame_count=6, fraction=0.15, seed=3)
    _, maps = generate(spec)
    assert len(maps) == 5
    assert [m.pair_index for m in maps] == [0, 1, 2, 3, 4]
    for m in maps[1:]:
        assert np.array_equal(m.flags, maps[0].flags)


def test_deterministic_under_fixed_seed():
    spec = InjectionSpec(width=31, height=17, frame_count=4, fraction=0.09, seed=1234)
    seq1, maps1 = generate(spec)
    seq2, maps2 = generate(spec)
    for f1, f2 in zip(seq1, seq2):
        assert f1.tobytes() == f2.tobytes()
    for m1, m2 in zip(maps1, maps2):
        assert np.array_equal(m1.flags, m2.flags)


def test_different_seeds_give_different_locations():
    a = pick_locations(1000, 50, seed=1)
    b = pick_locations(1000, 50, seed=2)
    assert a != b
    assert len(set(a)) == 50  # all distinct
    assert all(0 <= loc < 1000 for loc in a)


def test_lcg_reference_stream():
    # x <- (1664525 x + 1013904223) mod 2^32, from seed 0
    from flickerkit.synth import _lcg
    state = 0
    expected = [1013904223, 1196435762, 3519870697, 2868466484]
    got = []
    for _ in range(4):
        state = _lcg(state)
        got.append(state)
    assert got == expected


def test_detector_reproduces_ground_truth():
    spec = InjectionSpec(width=50, height=40, frame_count=6, fraction=0.08, seed=11)
    seq, truth = generate(spec)
    results = detect_sequence(seq)
    for (fmap, rep), expected in zip(results, truth):
        assert np.array_equal(fmap.flags, expected.flags)
        assert rep.ratio == flicker_ratio(expected)


def test_sub_threshold_pair_yields_no_detection():
    spec = InjectionSpec(width=30, height=30, frame_count=4, fraction=0.1,
                         base_color=PaletteColor.BLACK,
                         flicker_color=PaletteColor.BLUE, seed=5)
    seq, truth = generate(spec)
    assert truth[0].count > 0  # ground truth still marks the injected pixels
    for fmap, rep in detect_sequence(seq):
        assert not fmap.flags.any()
        assert rep.ratio == 0.0


def test_spec_validation():
    with pytest.raises(InputError):
        InjectionSpec(width=0, height=5)
    with pytest.raises(InputError):
        InjectionSpec(width=5, height=5, frame_count=0)
    with pytest.raises(InputError):
        InjectionSpec(width=5, height=5, fraction=1.5)
    with pytest.raises(InputError):
        InjectionSpec(width=5, height=5, fraction=-0.1)
