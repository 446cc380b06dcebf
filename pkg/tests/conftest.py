import pytest
from fastapi.testclient import TestClient

from genegraph import ingest
from genegraph.service import ServiceConfig, create_app

# The published format examples for the three dataset families, kept
# byte-faithful to the documented fragments (spaces after commas, mixed
# delimiters across files, one extra ignorable column in the disease table).

SOFT_CLUSTER_TEXT = """\
geneEntrezId,geneName,GLYCOLYSIS_GLUCONEOGENESIS,CITRATE_CYCLE_TCA_CYCLE,PENTOSE_PHOSPHATE_PATHWAY
873, CBR1, 0.2, 0.4, 0.9
2026, ENO2, 0.6, 0.6, 0.2
2665, GDI2, 0.1, 0.2, 0.1
"""

INTERACTION_TEXT = """\
SourceGeneId,TargetGeneId,score
216,216,0.75
3679,1134,0.73
55607,71,0.65
"""

DISEASE_TEXT = (
    "Disease/Trait\tGenes\tp-Value\tSource\n"
    "depressive disorder\tCBX4\t0.0000002\tstudy-a\n"
    "depressive disorder\tPDZD2\t0.0000003\tstudy-a\n"
    "depressive disorder\tCTC-497E21.5\t0.0000007\tstudy-b\n"
)

# Synthetic 3-cluster / 12-gene trio used by the end-to-end tests: ALPHA and
# BETA share genes 4-6, BETA and GAMMA share gene 9, GAMMA has no disease
# genes for crohn's disease so it must render dimmed.

TRIO_CLUSTER_TEXT = """\
geneEntrezId,geneName,ALPHA,BETA,GAMMA
1,G01,0.9,,
2,G02,0.8,,
3,G03,0.7,,
4,G04,0.5,0.5,
5,G05,0.4,0.6,
6,G06,0.3,0.9,
7,G07,,0.8,
8,G08,,0.7,
9,G09,,0.5,0.5
10,G10,,,0.9
11,G11,,,0.8
12,G12,,,0.6
"""

TRIO_INTERACTION_TEXT = """\
SourceGeneId,TargetGeneId,score
1,2,0.9
2,3,0.5
4,5,0.8
5,6,0.3
6,7,0.6
7,8,0.95
8,9,0.2
4,4,0.7
3,10,0.4
99,1,0.5
10,11,0.85
11,12,0.35
"""

TRIO_DISEASE_TEXT = """\
Disease/Trait,Genes,p-Value
crohn's disease,G01,0.000001
crohn's disease,G02,0.00002
crohn's disease,G04,0.0004
crohn's disease,G05,0.03
migraine,G07,0.0005
migraine,G03,0.2
prostate cancer,G11,0.05
"""


@pytest.fixture
def soft_cluster_text():
    return SOFT_CLUSTER_TEXT


@pytest.fixture
def interaction_text():
    return INTERACTION_TEXT


@pytest.fixture
def disease_text():
    return DISEASE_TEXT


@pytest.fixture
def soft_ds():
    return ingest.parse_cluster_table(SOFT_CLUSTER_TEXT)


@pytest.fixture
def trio_texts():
    return {
        "cluster": TRIO_CLUSTER_TEXT,
        "interaction": TRIO_INTERACTION_TEXT,
        "disease": TRIO_DISEASE_TEXT,
    }


@pytest.fixture
def trio_ds():
    return (
        ingest.parse_cluster_table(TRIO_CLUSTER_TEXT),
        ingest.parse_interaction_table(TRIO_INTERACTION_TEXT),
        ingest.parse_disease_table(TRIO_DISEASE_TEXT),
    )


@pytest.fixture
def client():
    with TestClient(create_app()) as c:
        yield c


@pytest.fixture
def small_limit_client():
    with TestClient(create_app(ServiceConfig(body_limit=256))) as c:
        yield c


def make_session(client, *, seed=None, datasets=None):
    body = {"seed": seed} if seed is not None else {}
    resp = client.post("/sessions", json=body)
    assert resp.status_code == 200, resp.text
    sid = resp.json()["session_id"]
    for kind, text in (datasets or {}).items():
        up = client.post(f"/sessions/{sid}/datasets/{kind}", content=text)
        assert up.status_code == 200, up.text
    return sid
