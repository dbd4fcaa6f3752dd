from flickerkit.cli import main
from flickerkit.phosphor import RefreshSweep, amp_curve_table, default_phosphors, visual_angle_table
from flickerkit.plots import (plot_amp_curves, plot_pair_ratios, plot_reduction,
                              plot_visual_angles)


def png_ok(path):
    return path.is_file() and path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_plot_pair_ratios(tmp_path):
    report = {"pairs": [{"index": i, "flagged": i, "total": 100, "ratio": i / 100}
                        for i in range(5)],
              "aggregate_ratio": 0.02}
    out = tmp_path / "ratios.png"
    plot_pair_ratios(report, out)
    assert png_ok(out)


def test_plot_reduction(tmp_path):
    report = {"pairs_before": [0.06, 0.06, 0.0], "pairs_after": [0.0, 0.03, 0.03, 0.0],
              "max_step_before": 1.0, "max_step_after": 0.5, "percent_reduction": 50.0}
    out = tmp_path / "reduction.png"
    plot_reduction(report, out)
    assert png_ok(out)


def test_plot_amp_curves(tmp_path):
    header, rows = amp_curve_table(default_phosphors(), RefreshSweep(30, 120, 5))
    out = tmp_path / "amp.png"
    plot_amp_curves(header, rows, out)
    assert png_ok(out)


def test_plot_visual_angles(tmp_path):
    header, rows = visual_angle_table([(640, 480), (800, 600)])
    out = tmp_path / "angles.png"
    plot_visual_angles(header, rows, out)
    assert png_ok(out)


def test_cli_plot_flags(tmp_path):
    frames = tmp_path / "frames"
    assert main(["synth", "--size", "12x8", "--frames", "3", "--out", str(frames)]) == 0
    detect_png = tmp_path / "detect.png"
    assert main(["detect", "--in", str(frames), "--plot", str(detect_png)]) == 0
    assert png_ok(detect_png)
    reduce_png = tmp_path / "reduce.png"
    assert main(["reduce", "--in", str(frames), "--out", str(tmp_path / "red"),
                 "--plot", str(reduce_png)]) == 0
    assert png_ok(reduce_png)
    amp_png = tmp_path / "amp.png"
    assert main(["phosphor", "--sweep", "30:120:10", "--out", str(tmp_path / "c.csv"),
                 "--plot", str(amp_png)]) == 0
    assert png_ok(amp_png)
    angle_png = tmp_path / "angle.png"
    assert main(["phosphor", "angle", "--out", str(tmp_path / "a.csv"),
                 "--plot", str(angle_png)]) == 0
    assert png_ok(angle_png)
