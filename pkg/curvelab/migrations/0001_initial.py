# Generated by Django 4.2 on 2026-10-19 12:00

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('suite', models.CharField(db_index=True, help_text='Идентификатор набора проверок.', max_length=50)),
                ('params', models.JSONField(default=dict, help_text='Параметры прогона (q, n, λ, ext, потолки).')),
                ('status', models.CharField(choices=[('passed', 'Все проверки прошли'), ('failed', 'Есть проваленные проверки')], db_index=True, max_length=10)),
                ('checks_total', models.PositiveIntegerField(default=0)),
                ('checks_failed', models.PositiveIntegerField(default=0)),
                ('report_dir', models.CharField(blank=True, default='', help_text='Каталог с JSON/CSV/XLSX отчётами.', max_length=500)),
                ('fields', models.JSONField(default=list, help_text='Поля GF(p^k) с модулями, использованные в прогоне.')),
            ],
            options={
                'verbose_name': 'Прогон проверок',
                'verbose_name_plural': 'Прогоны проверок',
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='CheckRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=100)),
                ('passed', models.BooleanField(db_index=True)),
                ('elapsed_ms', models.PositiveIntegerField(default=0)),
                ('data', models.JSONField(default=dict, help_text='Данные проверки в том виде, как они записаны в JSON-отчёт.')),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='checks', to='curvelab.verificationrun')),
            ],
            options={
                'verbose_name': 'Результат проверки',
                'verbose_name_plural': 'Результаты проверок',
                'ordering': ['run', 'id'],
            },
        ),
    ]
