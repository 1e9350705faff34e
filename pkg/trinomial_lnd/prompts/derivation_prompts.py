from mcp.server.fastmcp import FastMCP


def register_derivation_prompts(mcp: FastMCP) -> None:
    """Register prompt templates with the MCP server."""

    @mcp.prompt()
    def derivation_file_prompt(task_description: str) -> str:
        """Creates a prompt for writing spec and derivation files the engine accepts."""
        return f"""
Task: {task_description}

When writing input for the trinomial engine, please follow these rules:

1. A spec file has one 'key: value' per line and '#' starts a comment:
l0: 1 1
l1: 1 1
l2: 2
The lines l0, l1, l2 give the exponents of the three monomials of g; every exponent is a positive integer.

2. An explicit grading is optional. If used, give 'deg T(i,j): v1 v2 ...' for every generator,
all vectors of the same length, and make sure g is homogeneous.

3. A derivation file has one 'T(i,j) -> expression' per line. Generators that are not listed map to zero.

4. Expressions use rationals, '*', '+', '-' and powers: -1/2*T(0,1)^2*T(2,1) + T(1,1)
Exponents are positive integers. In T(i,j) the block i is 0, 1 or 2 and the position j starts at 1.

5. Degrees are given as coordinates in the active basis separated by spaces, with torsion residues after ';'.

6. Check a derivation with verify_derivation before using it, and use is_root before asking for witnesses.
"""
