from flask.cli import FlaskGroup

from . import create_app

cli = FlaskGroup(
    name="consetlab",
    create_app=create_app,
    add_default_commands=False,
    load_dotenv=False,
    set_debug_flag=False,
    help="Connected-set statistics and bound verification for small graphs.",
)


def main():
    cli.main(prog_name="consetlab")


if __name__ == "__main__":
    main()
