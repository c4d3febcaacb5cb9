from abc import ABC, abstractmethod
import argparse


class BaseCommand(ABC):
    """
    CLI 子命令的抽象基礎類別 (Command Pattern)。

    每個子命令宣告自己的參數，執行後回傳可序列化為 JSON 的字典。
    """

    name = ""
    help = ""

    def add_arguments(self, parser: argparse.ArgumentParser):
        """
        向子命令的 parser 註冊參數。預設沒有參數。
        """
        pass

    @abstractmethod
    def execute(self, args: argparse.Namespace) -> dict | list[dict]:
        """
        執行子命令。

        :param args: argparse 解析後的參數
        :return: 輸出的 JSON 內容 (不含 schema 欄位)；回傳串列時逐筆輸出為 JSON lines
        """
        pass
