"""Smoke tests for the python module: the headline numbers and the main ops."""

import os

import ptolemy_core as pc

DATA = os.environ.get("PTOLEMY_DATA", "data")


def test_word_algebra():
    w = pc.OperatorWord(2, "T[1,2] T[2,1^]")
    assert w.length == 2
    nf = pc.normalize(w)
    assert nf is not None
    exp, tail = nf
    assert exp == 1
    assert tail.cycles() == "(1 2 1^)"
    assert (w * w.inverse()).zeta_exp == 0


def test_scene_and_suite():
    scene = pc.Scene.load(os.path.join(DATA, "scenes", "chain_torus.tri"))
    assert scene.triangles == 6
    assert scene.genus == 2
    assert scene.punctures == 1
    instances, failures = pc.relation_suite(scene, 2, 7)
    assert instances > 50
    assert failures == []


def test_lantern_script_replay():
    final = pc.replay_script(os.path.join(DATA, "scripts", "lantern.script"))
    assert final.zeta_exp == 6


def test_relation_lifts():
    chain = pc.verify_relation(os.path.join(DATA, "relations", "chain.rel"), DATA)
    assert chain["ok"]
    assert chain["relation_exponent"] == -72
    assert chain["z_exponent"] == 12

    punct = pc.verify_relation(os.path.join(DATA, "relations", "puncture.rel"), DATA)
    assert punct["ok"]
    assert punct["identity_exponent"] == 6
    assert punct["z_exponent"] == 1

    braid = pc.verify_relation(
        os.path.join(DATA, "relations", "braid1.rel"), DATA, method="search"
    )
    assert braid["ok"]
    assert braid["identity_exponent"] == 0


def test_extension_class():
    c = pc.extension_class(12, [1, 1, 1, 1], 3)
    assert c["chi"] == 12
    assert c["euler"] == [1, 1, 1, 1]
    g2 = pc.extension_class(12, [1], 2)
    assert g2["chi"] == 2 and g2["chi_order"] == 10
    killed = pc.extension_class(12, [1], 2, embed_divisible=True)
    assert killed["chi"] == 0
    assert pc.scalar_group_order(12) == 2
