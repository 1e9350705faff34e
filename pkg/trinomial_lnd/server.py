from contextlib import asynccontextmanager
from dataclasses import dataclass
from typing import AsyncIterator
import sys

from mcp.server.fastmcp import FastMCP
from dotenv import load_dotenv

from trinomial_lnd.config import EngineConfig
from trinomial_lnd.engine.workspace import Workspace

print("Trinomial LND MCP Server starting up...", file=sys.stderr)

load_dotenv()  # Load environment variables from .env file


@dataclass
class AppContext:
    """Application context with the engine workspace."""

    workspace: Workspace
    config: EngineConfig


@asynccontextmanager
async def app_lifespan(server: FastMCP) -> AsyncIterator[AppContext]:
    """Initialize and manage server resources."""
    config = EngineConfig.from_env()

    workspace = Workspace(config)
    try:
        workspace.initialize()
        yield AppContext(workspace=workspace, config=config)
    finally:
        workspace.close()


mcp = FastMCP(EngineConfig.from_env().server_name, lifespan=app_lifespan)

from trinomial_lnd.tools.grading import register_grading_tools
from trinomial_lnd.tools.derivations import register_derivation_tools
from trinomial_lnd.tools.roots import register_root_tools
from trinomial_lnd.resources.trinomial_data import register_trinomial_resources
from trinomial_lnd.prompts.derivation_prompts import register_derivation_prompts

register_grading_tools(mcp)
register_derivation_tools(mcp)
register_root_tools(mcp)
register_trinomial_resources(mcp)

register_derivation_prompts(mcp)


def main():
    """Run the server."""
    mcp.run()


if __name__ == "__main__":
    main()
