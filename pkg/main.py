import sys

from app_controller import ApplicationController


def main(argv=None):
    controller = ApplicationController()
    return controller.start(argv)


if __name__ == '__main__':
    sys.exit(main())
