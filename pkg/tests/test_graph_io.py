import pytest

from src.embedding.embedding_core import Embedding, canonical_code, genus, reflect
from src.formats.graph_io import (PLANAR_CODE_HEADER, CatalogFormat, GraphFormatError, detect_format,
                                  iter_surftri, parse_embedding_text, parse_planar_code, parse_surftri_line,
                                  read_catalog, write_catalog, write_embedding_text, write_planar_code,
                                  write_surftri, write_surftri_line)
from src.generation.triangulation_gen import K4_SURFTRI, generate
from src.graph.named_graphs import complete_graph
from src.search.genus_search import embed_in_genus

K4_PLANAR_CODE = bytes([4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0])


def test_surftri_k4(k4):
    assert k4.order == 4
    assert k4.rotation == ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))
    assert write_surftri_line(k4) == K4_SURFTRI


@pytest.mark.parametrize("text, column", [
    ("4 bcd,adc,abd,acd", 8),
    ("4 bcd,adc,abd", 3),
    ("x bcd", 1),
    ("3 bc,ac,ae", 10),
    ("3 bb,ac,ab", 4),
])
def test_surftri_errors_report_column(text, column):
    with pytest.raises(GraphFormatError) as info:
        parse_surftri_line(text, 7)
    assert info.value.line == 7
    assert info.value.column == column


def test_surftri_rejects_order_above_26():
    g = complete_graph(27)
    rotation = tuple(tuple(g.neighbors(v)) for v in range(27))
    with pytest.raises(GraphFormatError):
        write_surftri_line(Embedding(g, rotation))


def test_iter_surftri_skips_blank_lines_and_counts_lines():
    text = K4_SURFTRI + "\n\n" + "4 bcd,adc,abd,acd\n"
    parsed = iter_surftri(text)
    assert next(parsed).order == 4
    with pytest.raises(GraphFormatError) as info:
        next(parsed)
    assert info.value.line == 3


def test_planar_code_k4(k4):
    assert write_planar_code([k4], header=False) == K4_PLANAR_CODE
    assert parse_planar_code(PLANAR_CODE_HEADER + K4_PLANAR_CODE) == [k4]


def test_planar_code_reports_truncation():
    data = PLANAR_CODE_HEADER + K4_PLANAR_CODE + K4_PLANAR_CODE[:9]
    with pytest.raises(GraphFormatError) as info:
        parse_planar_code(data)
    assert info.value.record == 1
    assert info.value.offset == len(data)


def test_planar_code_rejects_out_of_range_neighbour():
    data = bytearray(K4_PLANAR_CODE)
    data[2] = 9
    with pytest.raises(GraphFormatError) as info:
        parse_planar_code(bytes(data))
    assert info.value.offset == 2
    assert info.value.record == 0


def test_planar_code_two_byte_entries(k4):
    words = [4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0]
    little = bytes([0]) + b"".join(w.to_bytes(2, "little") for w in words)
    assert parse_planar_code(little) == [k4]
    big = b">>planar_code be<<" + bytes([0]) + b"".join(w.to_bytes(2, "big") for w in words)
    assert parse_planar_code(big) == [k4]


def test_catalog_formats_agree(tmp_path):
    level = generate(7)
    surftri = tmp_path / "seven.txt"
    planar = tmp_path / "seven.pc"
    write_catalog(surftri, level.embeddings)
    write_catalog(planar, level.embeddings, CatalogFormat.PLANAR_CODE)
    assert detect_format(planar.read_bytes()) is CatalogFormat.PLANAR_CODE
    assert detect_format(surftri.read_bytes()) is CatalogFormat.SURFTRI
    assert read_catalog(surftri) == read_catalog(planar) == level.embeddings
    assert surftri.read_text() == write_surftri(level.embeddings)


# byte 0xe9 sits in the first rotation list on line 2
def test_catalog_reports_non_ascii_byte(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes(K4_SURFTRI.encode("ascii") + b"\n4 b\xe9d,adc,abd,acb\n")
    with pytest.raises(GraphFormatError) as info:
        read_catalog(path)
    assert info.value.line == 2
    assert info.value.column == 4
    assert info.value.offset == len(K4_SURFTRI) + 4
    assert "0xe9" in str(info.value)


def test_embedding_text(k4):
    text = write_embedding_text(k4)
    assert text.splitlines()[0] == "4 0"
    assert text.splitlines()[1] == "0: 1 2 3"
    assert parse_embedding_text(text) == k4


def test_embedding_text_torus():
    e = embed_in_genus(complete_graph(7), 1).embedding
    text = write_embedding_text(e)
    assert text.startswith("7 1\n")
    parsed = parse_embedding_text(text)
    assert genus(parsed) == 1
    assert canonical_code(parsed) == canonical_code(e)


# The mirror image of a torus embedding is the same embedding up to flip-isomorphism
def test_reflected_torus_embedding_has_same_code():
    e = embed_in_genus(complete_graph(7), 1).embedding
    assert genus(reflect(e)) == 1
    assert canonical_code(reflect(e)) == canonical_code(e)


def test_embedding_text_checks_stated_genus(k4):
    text = write_embedding_text(k4).replace("4 0", "4 1", 1)
    with pytest.raises(GraphFormatError) as info:
        parse_embedding_text(text)
    assert info.value.line == 1


def test_embedding_text_reports_bad_neighbour(k4):
    lines = write_embedding_text(k4).splitlines()
    lines[2] = "1: 0 3 x"
    with pytest.raises(GraphFormatError) as info:
        parse_embedding_text("\n".join(lines))
    assert info.value.line == 3
    assert info.value.column == 8


def test_reflection_is_written_differently(k4):
    assert write_surftri_line(reflect(k4)) != write_surftri_line(k4)
    assert canonical_code(parse_surftri_line(write_surftri_line(reflect(k4)))) == canonical_code(k4)
