from mcp.server.fastmcp import FastMCP

from trinomial_lnd.utils.output import dumps


def register_grading_tools(mcp: FastMCP) -> None:
    """Register grading and class-count tools with the MCP server."""

    @mcp.tool()
    async def grading_info(spec_path: str) -> str:
        """Compute the fine grading of a trinomial algebra.

        Args:
            spec_path: Path to a spec file (lines ``l0: ...``, ``l1: ...``, ``l2: ...``)

        Returns:
            JSON with the grading group's free rank and torsion, the generator degrees,
            the degree of g, the basic sets and the positive functional
        """
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.info(spec_path)

        if result["result"] == "error":
            return f"Error: {result['error']}"

        return dumps(result["info"])

    @mcp.tool()
    async def elementary_classes(spec_path: str, listing: bool = False) -> str:
        """Count (and optionally list) the classes of elementary derivations.

        Args:
            spec_path: Path to a spec file
            listing: Also return each class (C, type, i0) with its image formulas

        Returns:
            JSON with the class count and, when listing, the classes
        """
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.elementary(spec_path, listing=listing)

        if result["result"] == "error":
            return f"Error: {result['error']}"

        result.pop("result")
        return dumps(result)
