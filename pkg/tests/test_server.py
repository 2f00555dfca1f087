"""
Test the MCP server tools.
"""

import json

import pytest

import server
from utils.counter import clear_memo


async def call(tool, **kwargs):
    fn = getattr(tool, "fn", tool)
    return await fn(**kwargs)


@pytest.fixture(autouse=True)
def fresh_memo():
    clear_memo()
    yield
    clear_memo()


@pytest.mark.server
class TestServerTools:
    """MCP tool functions return status-wrapped payloads."""

    @pytest.mark.asyncio
    async def test_count_matrices(self):
        result = await call(server.count_matrices, board="coords:2,2:(1,1)", rank=1)
        assert result["status"] == "success"
        assert result["result"]["pretty"] == "2*q^2-q-1"
        json.dumps(result)

    @pytest.mark.asyncio
    async def test_count_single_value(self):
        result = await call(server.count_matrices, board="coords:2,3:", rank=2, at_q=2)
        # 2 x 3 full-rank matrices over GF(2): (8 - 1)(8 - 2)
        assert result["result"]["value"] == "42"

    @pytest.mark.asyncio
    async def test_count_bad_board(self):
        result = await call(server.count_matrices, board="nothing:3", rank=1)
        assert result["status"] == "error"
        assert result["error"]["type"] == "BoardError"
        assert result["error"]["request_parameters"]["board"] == "nothing:3"

    @pytest.mark.asyncio
    async def test_count_bad_budget(self):
        result = await call(server.count_matrices, board="coords:2,2:", rank=1, budget=0)
        assert result["status"] == "error"

    @pytest.mark.asyncio
    async def test_rook_polynomial(self):
        result = await call(server.rook_polynomial, board="coords:2,2:(1,1);(1,2);(2,1);(2,2)", rank=2, convention="ne")
        assert result["status"] == "success"
        assert result["query"]["convention"] == "NE"
        assert result["result"]["placements"] == 2

    @pytest.mark.asyncio
    async def test_permutation_info(self):
        result = await call(server.permutation_info, word="2143", include_rothe=True)
        assert result["result"]["vexillary"] is False
        assert result["result"]["skew_vexillary"] is True
        assert result["result"]["rothe"]["cells"] == 2

    @pytest.mark.asyncio
    async def test_bruhat_poincare(self):
        result = await call(server.bruhat_poincare, word="321")
        assert result["result"]["pretty"] == "1"
        assert result["result"]["interval_size"] == 1

    @pytest.mark.asyncio
    async def test_generating_series(self):
        result = await call(server.generating_series, n=3)
        assert result["result"]["SV"] == [1, 1, 2, 6]

    @pytest.mark.asyncio
    async def test_generating_series_too_large(self):
        result = await call(server.generating_series, n=50)
        assert result["status"] == "error"
        assert result["error"]["type"] == "SeriesError"

    @pytest.mark.asyncio
    async def test_run_verification(self, tmp_path):
        target = tmp_path / "numzeroes.json"
        result = await call(server.run_verification, claim="numzeroes", n_max=3, threads=1, report_path=str(target))
        assert result["status"] == "success"
        assert result["result"]["passed"] is True
        assert json.loads(target.read_text())["query"]["claim"] == "numzeroes"

    @pytest.mark.asyncio
    async def test_run_verification_unknown(self):
        result = await call(server.run_verification, claim="nope", n_max=3)
        assert result["status"] == "error"
        assert "unknown claim" in result["error"]["message"]
