VERSION=(0, 1, 0)


def version_str():
    return ".".join((str(part) for part in VERSION))
