from mcp.server.fastmcp import FastMCP


def register_trinomial_resources(mcp: FastMCP) -> None:
    """Register trinomial data resources with the MCP server."""

    @mcp.resource("trinomial://{spec_path}")
    async def get_trinomial_info(spec_path: str) -> str:
        """Get the grading information of a spec file."""
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.info(spec_path)

        if result["result"] == "error":
            return f"Error: {result['error']}"

        info = result["info"]

        output = [f"# Trinomial: {info['trinomial']}"]
        output.append(f"- Exponents: {info['exponents']}")
        output.append(f"- Free rank: {info['free_rank']}")
        output.append(f"- Torsion: {info['torsion'] or 'none'}")
        output.append(f"- Coordinates: {info['coordinates']}")
        output.append("")
        output.append("## Generator degrees")
        for variable, degree in info["generator_degrees"].items():
            output.append(f"- {variable}: {degree['coordinates']} {degree['torsion'] or ''}".rstrip())
        output.append(f"- g: {info['g_degree']['coordinates']}")
        output.append("")
        output.append("## Basic sets")
        for basic_set in info["basic_sets"]:
            output.append(f"- {basic_set['set']}: offset {basic_set['offset']['coordinates']}")

        return "\n".join(output)

    @mcp.resource("trinomial://{spec_path}/classes")
    async def get_elementary_classes(spec_path: str) -> str:
        """Get the classes of elementary derivations of a spec file."""
        ctx = mcp.get_context()
        workspace = ctx.request_context.lifespan_context.workspace

        result = workspace.elementary(spec_path, listing=True)

        if result["result"] == "error":
            return f"Error: {result['error']}"

        output = [f"# Elementary classes ({result['count']})"]
        for cls in result["classes"]:
            head = f"- Type {cls['type']} C={cls['C']}"
            if cls["i0"] is not None:
                head += f" i0={cls['i0']}"
            output.append(head)
            for variable, image in cls["images"].items():
                output.append(f"  - {variable} -> {image}")

        return "\n".join(output)
