"""
用户界面包，包含命令行界面
"""
