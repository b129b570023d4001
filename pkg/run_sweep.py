from src.config import KinkBoxConfig, SweepConfig
from src.sweep_manager import run_sweep
from src.verification import format_report, run_checks
from hydra.core.config_store import ConfigStore
from omegaconf import OmegaConf
import hydra
import logging
import asyncio

log = logging.getLogger(__name__)


async def run_all(cfg: SweepConfig, verify_level: str) -> None:
    if verify_level != "none":
        results = await asyncio.to_thread(run_checks, verify_level)
        log.info("Self-checks:\n" + format_report(results))
    await run_sweep(cfg)


# * Configstore is the convoluted way of hydra to pass the config file data to a dataclass structure
cs = ConfigStore.instance()
cs.store(name="kinkbox_config", node=KinkBoxConfig)


@hydra.main(
    config_path="config", config_name="config", version_base=None
)  # * hydra passes config/config.yaml, checked against KinkBoxConfig, to main
def main(cfg: KinkBoxConfig) -> None:
    sweep_cfg = OmegaConf.to_object(cfg.sweep)
    try:
        asyncio.run(run_all(sweep_cfg, cfg.verify.level))
    except KeyboardInterrupt:
        log.info("Sweep stopped by user...")


if __name__ == "__main__":
    main()
