#!/usr/bin/env python3
"""
Configuration check: shows the settings read from the environment and the default run config.
"""
import os

from fockbridge.core.config import settings
from fockbridge.schemas.run_config import RunConfig


def check_config():
    print("fockbridge Configuration Check")
    print("=" * 50)

    print("\nOutput:")
    print(f"  FOCKBRIDGE_OUT: {settings.FOCKBRIDGE_OUT or 'NOT SET (config output_dir is used)'}")
    print(f"  FOCKBRIDGE_CONFIG: {settings.FOCKBRIDGE_CONFIG or 'NOT SET (defaults)'}")

    print("\nLogging:")
    print(f"  FOCKBRIDGE_LOG_LEVEL: {settings.FOCKBRIDGE_LOG_LEVEL}")

    print("\nSize guards:")
    print(f"  FOCKBRIDGE_MEMORY_CAP: {settings.FOCKBRIDGE_MEMORY_CAP}")
    print(f"  FOCKBRIDGE_DENSE_CAP: {settings.FOCKBRIDGE_DENSE_CAP}")

    print("\nCheck dispatch:")
    print(f"  FOCKBRIDGE_WORKERS: {settings.FOCKBRIDGE_WORKERS}")

    env_file_exists = os.path.exists(".env")
    print("\nEnvironment File:")
    print(f"  .env exists: {env_file_exists}")
    if not env_file_exists:
        print("  NOTE: copy .env.example to .env to change the defaults")

    print("\nDefault run config:")
    print(RunConfig().model_dump_json(indent=2))


if __name__ == "__main__":
    check_config()
