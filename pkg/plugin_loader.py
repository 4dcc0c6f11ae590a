import importlib
import json
import logging
import os

REQUIRED_MANIFEST_KEYS = ('name', 'command', 'description', 'module', 'entry_point')
COMMAND_METHODS = ('configure_parser', 'run')


def discover_manifests(plugins_dir):
    if not os.path.isdir(plugins_dir):
        return
    for plugin_folder_name in sorted(os.listdir(plugins_dir)):
        plugin_path = os.path.join(plugins_dir, plugin_folder_name)
        manifest_path = os.path.join(plugin_path, 'manifest.json')
        if not (os.path.isdir(plugin_path) and os.path.exists(manifest_path)):
            continue
        try:
            with open(manifest_path, 'r', encoding='utf-8') as file:
                manifest = json.load(file)
        except (OSError, json.JSONDecodeError) as error:
            logging.warning("Could not load plugin '%s': %s", plugin_folder_name, error)
            continue
        missing = [key for key in REQUIRED_MANIFEST_KEYS if key not in manifest]
        if missing:
            logging.warning("Skipping plugin '%s': manifest lacks %s.", plugin_folder_name, ', '.join(missing))
            continue
        logging.debug("Found command plugin '%s' (%s).", manifest['name'], manifest['command'])
        yield plugin_folder_name, manifest


def load_command_class(plugins_package, plugin_folder_name, manifest):
    """Import the command class a manifest names and check it can serve as a subcommand."""
    module_name = f"{plugins_package}.{plugin_folder_name}.{manifest['module']}"
    module = importlib.import_module(module_name)
    command_class = getattr(module, manifest['entry_point'], None)
    if command_class is None:
        raise AttributeError(f"{module_name} has no command class '{manifest['entry_point']}'")
    missing = [name for name in COMMAND_METHODS if not callable(getattr(command_class, name, None))]
    if missing:
        raise AttributeError(f"{module_name}.{manifest['entry_point']} lacks {', '.join(missing)}")
    logging.debug("Loaded command '%s' from %s.", manifest['command'], module_name)
    return command_class
