import math
import os
import pathlib

import pytest

import fittutor as ft

FIXTURES = pathlib.Path(
    os.environ.get("FITTUTOR_FIXTURE_DIR", pathlib.Path(__file__).parents[2] / "tests" / "fixtures")
)


def load(name):
    return ft.Frame.from_json((FIXTURES / name).read_text())


def stream():
    return [ft.Frame.from_json(line) for line in (FIXTURES / "stream.ndjson").read_text().splitlines()]


def test_frame_round_trip():
    f = load("tpose.json")
    assert ft.Frame.from_json(f.to_json()).to_json() == f.to_json()
    assert f.keypoint("leftShoulder") == (370.0, 110.0, pytest.approx(f.keypoint("leftShoulder")[2]))
    assert len(ft.BODY_PARTS) == 17


def test_frame_from_tuples():
    f = load("tpose.json")
    kps = [(p, *f.keypoint(p)) for p in reversed(ft.BODY_PARTS)]
    assert ft.Frame(f.t, f.width, f.height, kps) == f


def test_self_match_and_profile():
    ref = ft.make_reference("tpose", load("tpose.json"))
    assert list(ref.profile) == ["leftArm", "rightArm", "leftLeg", "rightLeg"]
    assert ref.profile["leftArm"]["slope"] == 0.0
    assert ref.profile["leftLeg"]["vertical"]
    fb = ft.compare(ref, ref.frame)
    assert [p.status for p in fb.pairs] == ["Match"] * 4


def test_tolerance_is_inclusive():
    assert ft.compute_slope(0, 0, 100, 150) == 1.5
    assert ft.compute_slope(5, 0, 5, 10) == "vertical"
    base = load("tpose.json")
    ref = ft.make_reference("tpose", base)
    lsx, lsy, _ = base.keypoint("leftShoulder")
    kps = [(p, *base.keypoint(p)) for p in ft.BODY_PARTS]
    for dy, expected in [(50, "Match"), (51, "MoveUp")]:
        moved = [(p, lsx + 100, lsy + dy, s) if p == "leftElbow" else (p, x, y, s) for p, x, y, s in kps]
        fb = ft.compare(ref, ft.Frame(0, base.width, base.height, moved))
        assert fb.status("leftArm") == expected


def test_extended_pairs_and_mirror():
    cfg = ft.ComparisonConfig(pair_set="extended", mode="angle")
    assert cfg.pair_ids[-2:] == ["leftForearm", "rightForearm"]
    assert ft.ComparisonConfig.from_json(cfg.to_json()) == cfg
    f = load("star.json")
    prof, mirrored = ft.extract_profile(f, cfg), ft.extract_profile(f.mirror(), cfg)
    for left, right in [("leftArm", "rightArm"), ("leftLeg", "rightLeg")]:
        a, b = prof[left]["slope"], mirrored[right]["slope"]
        if a is not None:
            assert math.isclose(a, -b, abs_tol=1e-12)


def test_process_stream_matches_session():
    ref = ft.make_reference("tpose", load("tpose.json"))
    frames = stream()
    feedback, report = ft.process_stream(frames, ref, debounce_frames=2)
    session = ft.Session(ref, debounce_frames=2)
    assert [session.push(f) for f in frames] == feedback
    assert session.report == report
    assert report.frames_processed == len(frames)
    for tally in report.per_pair.values():
        assert tally.match_frames + tally.correction_frames + tally.not_visible_frames == len(frames)
    assert ft.SessionReport.from_json(report.to_json()) == report
    assert ft.Feedback.from_json(feedback[1].to_json()) == feedback[1]


def test_reference_document_round_trip():
    ref = ft.make_reference("tpose", load("tpose.json"), ft.ComparisonConfig(pair_set="extended"))
    back = ft.Reference.from_json(ref.to_json())
    assert back.to_json() == ref.to_json()
    assert back.config.pair_set == "extended"
    assert ref.with_config(ft.ComparisonConfig()).config.pair_set == "table2"


def test_external_adapter():
    f = ft.Frame.from_external((FIXTURES / "external_no_dims.json").read_text())
    assert f == load("tpose.json")


def test_errors_carry_codes():
    with pytest.raises(ft.FittutorError) as e:
        ft.Frame.from_json('{"t": 0, "keypoints": [')
    assert e.value.args[0] == "MalformedDocument"
    with pytest.raises(ft.FittutorError) as e:
        ft.ComparisonConfig(tolerance=-1)
    assert e.value.args[0] == "InvalidConfig"
    with pytest.raises(ft.FittutorError) as e:
        ft.compute_slope(1, 1, 1, 1)
    assert e.value.args[0] == "DegeneratePair"
    with pytest.raises(ValueError):
        load("tpose.json").keypoint("left_shoulder")
