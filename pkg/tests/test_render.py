import xml.etree.ElementTree as ET

from hpfold.hp_model import HpSequence, decode, hh_contacts
from hpfold.render import render_ascii, render_svg

SVG = "{http://www.w3.org/2000/svg}"
SEQ1 = HpSequence("HPHPPHHPHPPHPHHPPHPH")
MV1 = (2, 6, 2, 6, 5, 4, 5, 1, 5, 6, 2, 6, 2, 3, 2, 1, 5, 1, 5)


def test_svg_structure():
    conf = decode(MV1)
    root = ET.fromstring(render_svg(SEQ1, conf, title="E=-15 & more"))
    circles = root.findall(f"{SVG}circle")
    assert len(circles) == 20
    assert sum(c.get("fill") == "red" for c in circles) == SEQ1.residues.count("H")
    contacts = [e for e in root.findall(f"{SVG}line") if e.get("class") == "contact"]
    assert len(contacts) == len(hh_contacts(SEQ1, conf)) == 15
    backbone = root.findall(f"{SVG}polyline")
    assert len(backbone) == 1 and len(backbone[0].get("points").split()) - 1 == 19


def test_svg_single_residue():
    root = ET.fromstring(render_svg(HpSequence("P"), decode(())))
    assert len(root.findall(f"{SVG}circle")) == 1
    assert not root.findall(f"{SVG}polyline")


def test_ascii_places_every_residue():
    text = render_ascii(SEQ1, decode(MV1))
    for k, r in enumerate(SEQ1.residues, start=1):
        assert f"{r}{k}" in text.split()


def test_ascii_straight_chain_is_one_row():
    assert render_ascii(HpSequence("HPH"), decode((1, 1))).strip() == "H1      P2      H3"


def test_backbone_segments_and_no_contacts_for_polar_chain():
    seq = HpSequence("P" * 6)
    root = ET.fromstring(render_svg(seq, decode((1,) * 5)))
    assert not [e for e in root.findall(f"{SVG}line") if e.get("class") == "contact"]
    points = root.find(f"{SVG}polyline").get("points").split()
    assert len(points) - 1 == 5
