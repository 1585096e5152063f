"""Smoke tests for the treerl extension module."""

import treerl


def test_iou_basic():
    a = treerl.Window(0, 0, 10, 10)
    b = treerl.Window(5, 0, 15, 10)
    assert abs(treerl.iou(a, b) - 50.0 / 150.0) < 1e-12
    assert treerl.iou(a, a) == 1.0


def approx_window(w, x0, y0, x1, y1, tol=1e-9):
    return (abs(w.x0 - x0) < tol and abs(w.y0 - y0) < tol
            and abs(w.x1 - x1) < tol and abs(w.y1 - y1) < tol)


def test_apply_action_geometry():
    w = treerl.Window(0, 0, 100, 100)
    center = treerl.apply_action(w, 4, 100, 100)
    assert approx_window(center, 22.5, 22.5, 77.5, 77.5)
    edge = treerl.apply_action(treerl.Window(70, 0, 100, 40), 6, 100, 100)
    assert approx_window(edge, 77.5, 0, 100, 40)
    assert treerl.ACTION_COUNT == 13
    assert isinstance(treerl.action_name(0), str)


def test_dataset_determinism():
    a = treerl.generate_dataset(5, 42)
    b = treerl.generate_dataset(5, 42)
    assert len(a) == 5
    assert all(x == y for x, y in zip(a, b))
    r1 = treerl.render(a[0])
    r2 = treerl.render(b[0])
    assert r1.data == r2.data
    assert r1.width == 128 and r1.height == 128


def test_propose_counts():
    scene = treerl.generate_dataset(1, 7)[0]
    raster = treerl.render(scene)
    feat = treerl.GridFeaturizer(4)
    net = treerl.make_qnet([2 * feat.dim() + 650, 16, 13], 3)
    props = treerl.propose(raster, net, feat, 5)
    assert len(props) == 31
    assert props[0].window == treerl.Window(0, 0, 128, 128)
    chain = treerl.propose_single_path(raster, net, feat, 10)
    assert len(chain) == 11


def test_checkpoint_round_trip(tmp_path):
    net = treerl.make_qnet([6, 4, 13], 11)
    path = str(tmp_path / "q.bin")
    treerl.save_qnet(net, path)
    loaded = treerl.load_qnet(path)
    assert loaded.dims == net.dims
    x = [0.1 * i for i in range(6)]
    assert loaded.forward(x) == net.forward(x)


def test_recall_trivial():
    gt = treerl.Window(10, 10, 60, 60)
    assert treerl.recall([([gt], [gt])], 1, 0.5) == 1.0
    miss = treerl.Window(100, 100, 110, 110)
    assert treerl.recall([([miss], [gt])], 1, 0.5) == 0.0
    # no large objects -> undefined
    small_gt = treerl.Window(0, 0, 10, 10)
    assert treerl.recall([([small_gt], [small_gt])], 1, 0.5, "large") is None


def test_train_tiny():
    scenes = treerl.generate_dataset(2, 5)
    cfg = treerl.TrainConfig()
    cfg.epochs = 1
    cfg.grid = 4
    cfg.hidden1 = 8
    cfg.hidden2 = 8
    cfg.batch_size = 8
    net, log = treerl.train(scenes, cfg)
    assert len(log) == 1
    assert log[0]["episodes"] == 2
    assert net.output_dim() == 13
