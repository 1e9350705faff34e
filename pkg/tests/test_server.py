import asyncio

from trinomial_lnd.server import mcp


def test_tools_are_registered():
    names = {tool.name for tool in asyncio.run(mcp.list_tools())}
    assert names == {
        "grading_info",
        "elementary_classes",
        "is_root",
        "roots_in_box",
        "verify_derivation",
        "witness_derivations",
        "run_oracle",
    }


def test_resources_are_registered():
    templates = {template.uriTemplate for template in asyncio.run(mcp.list_resource_templates())}
    assert templates == {"trinomial://{spec_path}", "trinomial://{spec_path}/classes"}


def test_derivation_prompt():
    result = asyncio.run(mcp.get_prompt("derivation_file_prompt", {"task_description": "swap two blocks"}))
    text = result.messages[0].content.text
    assert "Task: swap two blocks" in text
    assert "T(i,j) -> expression" in text
