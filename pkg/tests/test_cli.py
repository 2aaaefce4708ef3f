from pacsim.cli import main
from pacsim.construction import read_construction
from pacsim.sim import CSV_HEADER


def test_construct_subcommand(tmp_path):
    out = tmp_path / "h16.txt"
    rc = main(["construct", "--kind", "source", "--n", "16", "--size", "8",
               "--p", "0.11", "--method", "exact", "--out", str(out)])
    assert rc == 0
    info = read_construction(out)
    assert info["kind"] == "source" and info["N"] == 16
    assert info["indices"].shape == (8,)


def test_construct_channel(tmp_path):
    out = tmp_path / "i16.txt"
    rc = main(["construct", "--kind", "channel", "--n", "16", "--size", "12",
               "--design-snr", "3.0", "--trials", "5000", "--seed", "4",
               "--out", str(out)])
    assert rc == 0
    info = read_construction(out)
    assert info["kind"] == "channel" and info["indices"].shape == (12,)


def test_sim_with_config_and_flags(tmp_path):
    cfg = tmp_path / "toy.cfg"
    cfg.write_text(
        "n_source = 16\nn_channel = 16\nh_size = 8\ncrc_source = 4\n"
        "crc_channel = 0\ng_source = 1101\ng_channel = 11\n"
        "construction_trials = 5000\nconstruction_seed = 3\n")
    out = tmp_path / "run.csv"
    rc = main(["jscc-sim", "--config", str(cfg), "--out", str(out),
               "--snr-start", "3", "--snr-stop", "3", "--snr-step", "1",
               "--trials", "8", "--target-errors", "0",
               "--list-c", "4", "--list-sc", "2", "--list-s", "4",
               "--seed", "21"])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    assert lines[1].startswith("jscc-joint,3,")


def test_sim_with_construction_files(tmp_path):
    hfile = tmp_path / "h.txt"
    ifile = tmp_path / "i.txt"
    main(["construct", "--kind", "source", "--n", "16", "--size", "8",
          "--method", "exact", "--out", str(hfile)])
    main(["construct", "--kind", "channel", "--n", "16", "--size", "12",
          "--trials", "5000", "--out", str(ifile)])
    cfg = tmp_path / "toy.cfg"
    cfg.write_text(
        "n_source = 16\nn_channel = 16\nh_size = 8\ncrc_source = 4\n"
        "crc_channel = 0\ng_source = 1101\ng_channel = 11\n")
    out = tmp_path / "run.csv"
    rc = main(["separate-sim", "--config", str(cfg), "--out", str(out),
               "--snr-start", "4", "--snr-stop", "4", "--snr-step", "1",
               "--trials", "6", "--target-errors", "0",
               "--list-c", "4", "--list-s", "4", "--seed", "2",
               "--construction", str(hfile), "--construction", str(ifile)])
    assert rc == 0
    assert out.read_text().splitlines()[1].startswith("jscc-separate,4,")


def test_source_sim(tmp_path):
    out = tmp_path / "src.csv"
    cfg = tmp_path / "toy.cfg"
    cfg.write_text(
        "n_source = 16\nh_size = 8\ncrc_source = 4\ng_source = 1101\n"
        "construction_trials = 5000\n")
    rc = main(["source-sim", "--config", str(cfg), "--out", str(out),
               "--trials", "12", "--target-errors", "0", "--list-s", "4",
               "--seed", "5"])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("source-only,0,0,12,")
