from typing import List

from mcp.server.fastmcp import FastMCP

from trinomial_lnd.utils.output import dumps


def register_root_tools(mcp: FastMCP) -> None:
    """Register root queries with the MCP server."""

    @mcp.tool()
    async def is_root(spec_path: str, degree: str) -> str:
        """Decide whether a degree is a root, i.e. the degree of some locally nilpotent derivation.

        Args:
            spec_path: Path to a spec file
            degree: Coordinates in the active basis separated by spaces, torsion residues after ';'
                (e.g. "-1 -1 0")

        Returns:
            JSON with the verdict, the basic sets containing the degree and their witnesses
        """
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.is_root(degree, spec_path)

        if result["result"] == "error":
            return f"Error: {result['error']}"

        return dumps(result["root"])

    @mcp.tool()
    async def roots_in_box(spec_path: str, bounds: List[List[int]], output_format: str = "json") -> str:
        """List every root whose coordinates lie in a box.

        Args:
            spec_path: Path to a spec file
            bounds: One [lo, hi] pair per coordinate
            output_format: 'json' or 'csv'

        Returns:
            The roots with their basic-set count and Type I flag
        """
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.roots([tuple(b) for b in bounds], spec_path, output_format=output_format)

        if result["result"] == "error":
            return f"Error: {result['error']}"

        if output_format == "csv":
            return result["csv"]
        return f"{result['count']} roots\n" + dumps(result["roots"])
