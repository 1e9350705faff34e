from typing import List, Optional

from mcp.server.fastmcp import FastMCP

from trinomial_lnd.utils.output import dumps


def register_derivation_tools(mcp: FastMCP) -> None:
    """Register derivation construction and verification tools with the MCP server."""

    @mcp.tool()
    async def verify_derivation(spec_path: str, derivation: str, nilpotency_cap: Optional[int] = None) -> str:
        """Check a derivation given by its generator images.

        Args:
            spec_path: Path to a spec file
            derivation: One 'T(i,j) -> expression' per line; unlisted generators map to zero
            nilpotency_cap: Powers tried before the nilpotency check gives up

        Returns:
            JSON verdicts: well-definedness, degree, nilpotency and the recognized elementary form
        """
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.verify(derivation, spec_path, nilpotency_cap=nilpotency_cap)

        if result["result"] == "error":
            return f"Error: {result['error']}"

        result.pop("result")
        return dumps(result)

    @mcp.tool()
    async def witness_derivations(spec_path: str, degree: str) -> str:
        """Construct an elementary locally nilpotent derivation of a root degree.

        Args:
            spec_path: Path to a spec file
            degree: Coordinates in the active basis, torsion residues after ';'

        Returns:
            JSON with one verified derivation per basic set containing the degree
        """
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.witness(degree, spec_path)

        if result["result"] == "error":
            return f"Error: {result['error']}"

        if not result["root"]["is_root"]:
            return f"{degree} is not a root"

        result.pop("result")
        return dumps(result)

    @mcp.tool()
    async def run_oracle(
        spec_path: str,
        degrees: Optional[List[str]] = None,
        window: Optional[List[int]] = None,
        cap: Optional[int] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> str:
        """Brute-force check that nilpotent derivations of small degree are elementary.

        Args:
            spec_path: Path to a spec file
            degrees: Degrees to check; when omitted, a ψ-window is used
            window: [lo, hi] for the ψ-window (default [-W, W]); needs free rank 1
            cap: Total-degree bound on derivation images
            samples: Random combinations tried per derivation space
            seed: Seed for the random combinations

        Returns:
            The oracle report as JSON
        """
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.oracle(
            spec_path,
            degrees=degrees,
            window=tuple(window) if window else None,
            cap=cap,
            samples=samples,
            seed=seed,
        )

        if result["result"] == "error":
            return f"Error: {result['error']}"

        report = result["report"]
        status = "OK" if report["ok"] else "FAILED"
        return f"Oracle {status} on {len(report['degrees'])} degrees\n" + dumps(report)
