import argparse
import ast
import importlib
import os
import sys

import lstdtools.tools as tools_package


def _assigned_strings(tree, name):
    return [
        item.value.value
        for item in tree.body
        if isinstance(item, ast.Assign)
        and isinstance(item.targets[0], ast.Name)
        and item.targets[0].id == name
        and isinstance(item.value, ast.Constant)
        and isinstance(item.value.value, str)
    ]


def find_tools():
    """
    Searches the tools folder for modules with a TOOLNAME, a TOOLTIP and a single main() function.

    Returns
    -------
    generator
        of (TOOLNAME, (module name, TOOLTIP))
    """
    root = tools_package.__path__[0]

    for filename in sorted(os.listdir(root)):
        if not filename.endswith(".py"):
            continue
        with open(os.path.join(root, filename), "rt", encoding="utf-8") as file:
            tree = ast.parse(file.read(), filename=filename)

        module = filename[:-3]
        toolname = _assigned_strings(tree, "TOOLNAME")
        toolname = toolname[0] if toolname else module
        tooltip = " / ".join(_assigned_strings(tree, "TOOLTIP")) or toolname

        mains = [
            item.name
            for item in tree.body
            if isinstance(item, ast.FunctionDef) and item.name == "main"
        ]
        if len(mains) == 1:
            yield toolname, (module, tooltip)


def help_method(tools):
    """
    Prints the available tools and exits
    """

    def add_tip(tool, tip) -> str:
        return tool if tip == "" else f"{tool: <10} - {tip}"

    epilog = "Available tools - use <tool> -h for additional help\n\n" + "\n".join(
        sorted(add_tip(name, tool[1]) for name, tool in tools.items())
    )

    parser = argparse.ArgumentParser(
        prog="lstdtools",
        description="Automatic lambda selection for LSTD(lambda) policy evaluation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=epilog,
    )
    parser.add_argument("tool", metavar="<tool>", help="Tool to run. Options are listed below.")
    parser.add_argument("arg1", metavar="<arg-1>", help=" - tool")
    parser.add_argument("arg2", metavar=" ... ", help=" - specific")
    parser.add_argument("arg3", metavar="<arg-n>", help=" - arguments")
    parser.print_help()
    sys.exit(2)


def main():
    tools = dict(find_tools())

    if len(sys.argv) > 1:
        first = sys.argv[1]
        if first in tools:
            mod = importlib.import_module(f"lstdtools.tools.{tools[first][0]}")
            sys.argv = [f"{sys.argv[0]} {first}"] + sys.argv[2:]
            sys.exit(mod.main())

    help_method(tools)


if __name__ == "__main__":
    main()
